use hodgeworks::diagrams::{Diagram, PreMorphism, ZigzagShape};
use hodgeworks::exactla::{Field, Matrix, Subspace};
use hodgeworks::filtered::FilteredComplex;
use hodgeworks::format::{decode_complex, decode_diagram, encode_complex, encode_diagram, from_json, to_json};
use hodgeworks::hodge;
use hodgeworks::random::{self, ComplexBounds};
use hodgeworks::{Gaussian as G, Rational as Q};
use proptest::prelude::*;

const SMALL: ComplexBounds = ComplexBounds { max_degrees: 3, max_dim: 2, max_levels: 3 };

fn complex(seed: u64) -> FilteredComplex<Q> {
    random::filtered_complex(&mut random::rng(seed), ComplexBounds::default(), true)
}

fn pair(seed: u64) -> (Diagram<Q>, Diagram<Q>, random::Rng8) {
    let mut rng = random::rng(seed);
    let shape = ZigzagShape::zigzag(2).unwrap();
    let x = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
    let y = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
    (x, y, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_field_axioms(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9) {
        let x = G::from_parts(&[Q::from_int(a), Q::from_int(b)]);
        let y = G::from_parts(&[Q::from_int(c), Q::from_int(d)]);
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
        if y != G::from_int(0) {
            prop_assert_eq!(x.clone() * y.clone() / y, x);
        }
    }

    #[test]
    fn rank_nullity(seed in any::<u64>(), rows in 0usize..6, cols in 0usize..6) {
        let m: Matrix<G> = random::matrix(&mut random::rng(seed), rows, cols, false);
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn grassmann_formula(seed in any::<u64>(), n in 1usize..7, a in 0usize..7, b in 0usize..7) {
        let mut rng = random::rng(seed);
        let u: Subspace<Q> = random::subspace(&mut rng, n, a.min(n), true);
        let v = random::subspace(&mut rng, n, b.min(n), true);
        prop_assert_eq!(u.join(&v).dim() + u.meet(&v).dim(), u.dim() + v.dim());
    }

    #[test]
    fn decalage_inverts_shift(seed in any::<u64>()) {
        let k = complex(seed);
        let s = k.shift(0);
        prop_assert_eq!(&s.decalage(0), &k);
        prop_assert_eq!(&s.dual_decalage(0), &k);
        prop_assert!(s.is_in_cr(0, 1));
    }

    #[test]
    fn pages_square_to_zero_and_recur(seed in any::<u64>(), r in 0u32..4) {
        let k = complex(seed);
        let (e, next) = (k.page(0, r), k.page(0, r + 1));
        prop_assert!(e.squares_to_zero());
        for &(p, q) in e.cells.keys() {
            prop_assert_eq!(e.homology_dim(p, q), next.dim(p, q));
        }
    }

    #[test]
    fn pre_morphism_differential_squares_to_zero(seed in any::<u64>(), degree in -2i32..=2, r in 0i32..2) {
        let (x, y, mut rng) = pair(seed);
        let f = random::pre_morphism(&mut rng, &x, &y, degree, r);
        let df = f.differential(&x, &y);
        prop_assert!(df.differential(&x, &y).is_zero());
        prop_assert!(r > 0 || df.is_admissible(&x, &y, 0));
    }

    #[test]
    fn composition_is_unital_and_associative(seed in any::<u64>()) {
        let (x, y, mut rng) = pair(seed);
        let s = x.shape().clone();
        let z = random::diagram_in(&mut rng, &s, 0, 2, SMALL);
        let f = random::pre_morphism(&mut rng, &x, &y, 0, 0);
        let g = random::pre_morphism(&mut rng, &y, &z, 1, 0);
        let h = random::pre_morphism(&mut rng, &z, &x, -1, 0);
        prop_assert_eq!(h.compose(&g, &s).compose(&f, &s), h.compose(&g.compose(&f, &s), &s));
        prop_assert_eq!(&f.compose(&PreMorphism::identity(&x), &s), &f);
    }

    #[test]
    fn complex_files_round_trip(seed in any::<u64>()) {
        let k = complex(seed);
        let text = to_json(&encode_complex(&k, true));
        let back = decode_complex::<Q>(&from_json(&text, "$").unwrap(), "$").unwrap();
        prop_assert_eq!(to_json(&encode_complex(&back, true)), text);
        prop_assert_eq!(back, k);
    }

    #[test]
    fn diagram_files_round_trip(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let d: Diagram<G> = random::diagram(&mut rng, &ZigzagShape::zigzag(2).unwrap(), SMALL);
        let back = decode_diagram::<G>(&encode_diagram(&d, true), "$").unwrap();
        prop_assert_eq!(back, d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn deligne_splitting_recovers_filtrations(seed in any::<u64>()) {
        let h = random::mhs::<G>(&mut random::rng(seed), 3);
        prop_assert!(h.is_mhs());
        prop_assert!(hodge::deligne_splitting(&h).unwrap().check(&h));
        prop_assert_eq!(hodge::ext(&h, &h, 2).dim, 0);
    }

    #[test]
    fn hodge_decalage_inverts_weight_shift(seed in any::<u64>()) {
        let k = random::ahc::<G>(&mut random::rng(seed), 3, 2);
        prop_assert!(hodge::check_ahc(&k).unwrap().pass());
        let m = hodge::s_w(&k);
        prop_assert_eq!(&hodge::dec_w(&m), &k);
        prop_assert!(hodge::check_mhc(&m).unwrap().pass());
    }

    #[test]
    fn filtered_quasi_isomorphisms_preserve_ahc(seed in any::<u64>()) {
        let k = random::ahc::<G>(&mut random::rng(seed), 3, 2);
        let m = hodge::minimal_model(&k).unwrap();
        let verdict = hodge::closure_check(&m.sigma, &m.h, &k, hodge::Mode::Ahc).unwrap();
        prop_assert!(verdict.pass());
        prop_assert!(hodge::closure_check(&m.rho, &k, &m.h, hodge::Mode::Ahc).unwrap().pass());
    }

    #[test]
    fn homset_formula_matches_classes(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let k = random::ahc::<G>(&mut rng, 3, 2);
        let l = random::ahc::<G>(&mut rng, 2, 2);
        let h = hodge::homset(&k, &l).unwrap();
        prop_assert!(h.agrees(), "{:?}", h);
    }
}

use super::*;
use crate::exactla::Rational;
use crate::filtered::{Complex, W};
use crate::random;

type Q = Rational;

fn bete(c: Complex<Q>) -> FilteredComplex<Q> {
    FilteredComplex::trivially_filtered(c).shift(0)
}

/// `ℚ → ℚ` with `d = 1`, bête filtration.
fn unit_interval() -> FilteredComplex<Q> {
    bete(Complex::new(0, vec![1, 1], vec![Matrix::identity(1)]).unwrap())
}

fn sample(seed: u64) -> (FilteredComplex<Q>, FilteredComplex<Q>, random::Rng8) {
    let mut rng = random::rng(seed);
    let bounds = random::ComplexBounds { max_degrees: 3, max_dim: 3, max_levels: 3 };
    let k = random::filtered_complex::<Q>(&mut rng, bounds, true);
    let l = random::filtered_complex::<Q>(&mut rng, bounds, true);
    (k, l, rng)
}

#[test]
fn zero_homotopy_is_reflexive() {
    let k = crate::filtered::fcomplex::tests::worked_example();
    let id = GradedMap::identity(k.grading());
    assert!(HomotopyCertificate::reflexive(&id, 0).check(&k, &k).unwrap());
}

#[test]
fn level_drop_needs_stage_one() {
    let k = unit_interval();
    let id = GradedMap::identity(k.grading());
    let zero = GradedMap::zero(0, k.grading(), k.grading());
    let h = GradedMap::from_fn(-1, k.grading(), k.grading(), |n| {
        if n == 1 { Matrix::identity(1) } else { Matrix::zeros(k.dim(n - 1), k.dim(n)) }
    });
    let c1 = HomotopyCertificate::new(zero.clone(), id.clone(), h.clone(), 1);
    let c0 = HomotopyCertificate::new(zero.clone(), id.clone(), h, 0);
    assert!(c1.check(&k, &k).unwrap());
    assert!(!c0.check(&k, &k).unwrap());
    assert!(solve_homotopy(&zero, &id, &k, &k, 0, Restriction::Rational).is_none());
    assert!(solve_homotopy(&zero, &id, &k, &k, 1, Restriction::Rational).is_some());
}

#[test]
fn shape_mismatch_is_an_error() {
    let k = unit_interval();
    let id = GradedMap::identity(k.grading());
    let c = HomotopyCertificate::new(id.clone(), id.clone(), id, 0);
    assert!(c.check(&k, &k).is_err());
}

#[test]
fn cylinder_structure() {
    for seed in 0..20 {
        let (k, _, _) = sample(seed);
        for r in 0..2 {
            let c = cylinder(&k, r);
            let cyl = &c.double.cyl;
            for n in cyl.complex().degrees() {
                assert_eq!(cyl.dim(n), k.dim(n + 1) + 2 * k.dim(n));
            }
            assert!(c.h.check(cyl, cyl).unwrap());
            assert_eq!(c.p.compose(&c.double.j), GradedMap::identity(k.grading()));
            assert_eq!(c.p.compose(&c.double.i), GradedMap::identity(k.grading()));
            assert!(crate::filtered::is_filtered_morphism(&c.p, cyl, &k));
            let eq = EquivalenceCertificate {
                f: c.p.clone(),
                g: c.double.j.clone(),
                on_source: c.h.clone(),
                on_target: HomotopyCertificate::reflexive(&GradedMap::identity(k.grading()), r),
            };
            assert!(eq.check_sr_subset_er(cyl, &k).unwrap());
        }
    }
}

#[test]
fn double_cylinder_maps_and_universal_property() {
    for seed in 0..20 {
        let (x, y, mut rng) = sample(100 + seed);
        let z = random::filtered_complex::<Q>(&mut rng, random::ComplexBounds { max_degrees: 3, max_dim: 3, max_levels: 3 }, true);
        let f = random::chain_map(&mut rng, &x, &y, true, true);
        let g = random::chain_map(&mut rng, &x, &z, true, true);
        for r in 0..2 {
            let dc = double_cylinder(&f, &g, &x, &y, &z, r);
            assert!(crate::filtered::is_filtered_morphism(&dc.i, &z, &dc.cyl));
            assert!(crate::filtered::is_filtered_morphism(&dc.j, &y, &dc.cyl));
            assert!(dc.k_certificate(&f, &g).check(&x, &dc.cyl).unwrap());
            // a map out of the cylinder is a homotopy u f ≃ v g
            let t = random::chain_map(&mut rng, &dc.cyl, &y, true, true);
            let (h, u, v) = dc.disassemble(&t);
            let cert = HomotopyCertificate::new(u.compose(&f), v.compose(&g), h.clone(), r);
            assert!(cert.check(&x, &y).unwrap());
            let back = dc.assemble(&h, &u, &v);
            assert_eq!(back, t);
            assert!(back.is_chain_map(dc.cyl.complex(), y.complex()));
        }
    }
}

#[test]
fn strict_double_cylinder_is_block_diagonal() {
    let (x, y, _) = sample(7);
    let f = GradedMap::zero(0, x.grading(), y.grading());
    let g = GradedMap::zero(0, x.grading(), x.grading());
    let dc = double_cylinder(&f, &g, &x, &y, &x, 0);
    let expected = FilteredComplex::direct_sum(&[&x.translate(&[0]), &y, &x]);
    assert_eq!(dc.cyl, expected);
}

#[test]
fn cone_dimensions() {
    let (k, l, mut rng) = sample(42);
    let f = random::chain_map(&mut rng, &k, &l, true, true);
    let c = cone(&f, &k, &l, 1);
    for n in c.cyl.complex().degrees() {
        assert_eq!(c.cyl.dim(n), k.dim(n + 1) + l.dim(n));
    }
}

#[test]
fn homotopies_compose() {
    for seed in 0..10 {
        let (k, l, mut rng) = sample(200 + seed);
        let f = random::chain_map(&mut rng, &k, &l, true, true);
        let c = cylinder(&l, 0);
        // i f ≃ j f through the cylinder homotopy
        let jf = c.double.j.compose(&f);
        let if_ = c.double.i.compose(&f);
        let cert = c.double.k_certificate(&GradedMap::identity(l.grading()), &GradedMap::identity(l.grading())).pre(&f);
        assert_eq!((&cert.f, &cert.g), (&jf, &if_));
        assert!(cert.check(&k, &c.double.cyl).unwrap());
        let back = cert.post(&c.p);
        assert!(back.check(&k, &l).unwrap());
        let round = cert.then(&cert.reverse());
        assert!(round.check(&k, &c.double.cyl).unwrap());
        assert_eq!(round.f, round.g);
        let solved = solve_homotopy(&jf, &if_, &k, &c.double.cyl, 0, Restriction::Rational).unwrap();
        assert!(solved.check(&k, &c.double.cyl).unwrap());
    }
}

#[test]
fn translation_commutes_with_shift_and_decalage() {
    for seed in 0..30 {
        let (k, _, _) = sample(300 + seed);
        for r in 0..3 {
            assert_eq!(k.translate(&[r + 1]).decalage(W), k.decalage(W).translate(&[r]));
            assert_eq!(k.translate(&[r]).shift(W), k.shift(W).translate(&[r + 1]));
        }
    }
}

#[test]
fn decalage_and_shift_move_certificates() {
    let k = unit_interval();
    let id = GradedMap::identity(k.grading());
    let zero = GradedMap::zero(0, k.grading(), k.grading());
    let c = solve_homotopy(&zero, &id, &k, &k, 1, Restriction::Rational).unwrap();
    let dec = k.decalage(W);
    let lowered = HomotopyCertificate { r: 0, ..c.clone() };
    assert!(lowered.check(&dec, &dec).unwrap());
    let s = k.shift(W);
    let raised = HomotopyCertificate { r: 2, ..c };
    assert!(raised.check(&s, &s).unwrap());
    for seed in 0..20 {
        let (k, l, mut rng) = sample(400 + seed);
        let f = random::chain_map(&mut rng, &k, &l, true, true);
        let h = GradedMap::zero(-1, k.grading(), l.grading());
        let c = HomotopyCertificate::new(f.clone(), f, h, 1);
        assert!(c.check(&k, &l).unwrap());
        let lowered = HomotopyCertificate { r: 0, ..c };
        assert!(lowered.check(&k.decalage(W), &l.decalage(W)).unwrap());
    }
}

#[test]
fn certificate_for_non_equivalence_is_rejected() {
    let k = unit_interval();
    let zero_cx = cylinder::zero_like(&k);
    let f = GradedMap::zero(0, k.grading(), zero_cx.grading());
    let g = GradedMap::zero(0, zero_cx.grading(), k.grading());
    assert!(!is_er_quis(&f, &k, &zero_cx, 0, 0));
    let h = solve_homotopy(&g.compose(&f), &GradedMap::identity(k.grading()), &k, &k, 1, Restriction::Rational).unwrap();
    let claim = EquivalenceCertificate {
        f,
        g,
        on_source: HomotopyCertificate { r: 0, ..h },
        on_target: HomotopyCertificate::reflexive(&GradedMap::identity(zero_cx.grading()), 0),
    };
    assert!(!claim.check_sr_subset_er(&k, &zero_cx).unwrap());
    let honest = EquivalenceCertificate { on_source: HomotopyCertificate { r: 1, ..claim.on_source.clone() }, ..claim };
    assert!(honest.check_sr_subset_er(&k, &zero_cx).unwrap());
}

#[test]
fn bifiltered_translation_shifts_weight_only() {
    let k = crate::filtered::fcomplex::tests::worked_example();
    let two = k.with_filtrations(vec![k.filtration(0).clone(), k.filtration(0).clone()]).unwrap();
    let t = two.translate(&stage_shifts(1, 2));
    assert_eq!(t.complex().lo(), -1);
    for at in 0..2 {
        assert_eq!(t.filtration(1).chains[at], k.filtration(0).chains[at]);
        assert_eq!(t.filtration(0).chains[at], k.filtration(0).chains[at].reindex(-1));
    }
}

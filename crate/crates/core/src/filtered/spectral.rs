use std::collections::BTreeMap;

use crate::exactla::{Field, Matrix, Subspace};

use super::complex::{GradedMap, Subquotient};
use super::fcomplex::FilteredComplex;

/// `E_r^{p,q} = Z / B` with
/// `Z = F^p K^{p+q} ∩ d^{-1}(F^{p+r} K^{p+q+1})` and
/// `B = F^{p+1} K^{p+q} ∩ d^{-1}(F^{p+r} K^{p+q+1}) + d(F^{p−r+1} K^{p+q−1}) ∩ F^p K^{p+q}`.
#[derive(Clone, Debug)]
pub struct SpectralPage<F> {
    pub r: u32,
    pub cells: BTreeMap<(i32, i32), Subquotient<F>>,
    /// `d_r: E_r^{p,q} → E_r^{p+r, q−r+1}`, keyed by source.
    pub differentials: BTreeMap<(i32, i32), Matrix<F>>,
}

impl<F: Field> SpectralPage<F> {
    pub fn dim(&self, p: i32, q: i32) -> usize {
        self.cells.get(&(p, q)).map_or(0, Subquotient::dim)
    }

    /// Nonzero dimensions.
    pub fn dims(&self) -> BTreeMap<(i32, i32), usize> {
        self.cells.iter().filter(|(_, c)| c.dim() > 0).map(|(&k, c)| (k, c.dim())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.cells.values().map(Subquotient::dim).sum()
    }

    pub fn differential(&self, p: i32, q: i32) -> Matrix<F> {
        let r = self.r as i32;
        self.differentials
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(p + r, q - r + 1), self.dim(p, q)))
    }

    /// `d_r ∘ d_r = 0` in every bidegree.
    pub fn squares_to_zero(&self) -> bool {
        let r = self.r as i32;
        self.cells.keys().all(|&(p, q)| (&self.differential(p + r, q - r + 1) * &self.differential(p, q)).is_zero())
    }

    /// Dimension of the cohomology of `(E_r, d_r)` at `(p, q)`.
    pub fn homology_dim(&self, p: i32, q: i32) -> usize {
        let r = self.r as i32;
        let out = self.differential(p, q);
        let inc = self.differential(p - r, q + r - 1);
        self.dim(p, q) - out.rank() - inc.rank()
    }
}

impl<F: Field> FilteredComplex<F> {
    fn cell(&self, i: usize, r: i32, p: i32, n: i32) -> Subquotient<F> {
        let d = self.d(n);
        let target = self.level(i, p + r, n + 1);
        let cyc = Subspace::preimage(&d, &target).expect("shapes");
        let fp = self.level(i, p, n);
        let z = fp.meet(&cyc);
        let z_next = self.level(i, p + 1, n).meet(&cyc);
        let bd = self.level(i, p - r + 1, n - 1).image_under(&self.d(n - 1)).meet(&fp);
        Subquotient::new(z, z_next.join(&bd))
    }

    /// Page `E_r` of the spectral sequence of filtration `i`.
    pub fn page(&self, i: usize, r: u32) -> SpectralPage<F> {
        let ri = r as i32;
        let mut cells = BTreeMap::new();
        for n in self.complex().degrees() {
            let c = self.chain(i, n);
            for p in c.lo()..c.top() {
                cells.insert((p, n - p), self.cell(i, ri, p, n));
            }
        }
        let mut differentials = BTreeMap::new();
        for (&(p, q), src) in &cells {
            if let Some(tgt) = cells.get(&(p + ri, q - ri + 1)) {
                differentials.insert((p, q), src.induced(&self.d(p + q), tgt));
            }
        }
        SpectralPage { r, cells, differentials }
    }

    /// A stage after which the spectral sequence of filtration `i` is constant.
    pub fn stable_stage(&self, i: usize) -> u32 {
        (self.filtration(i).length() + 1).max(1) as u32
    }

    pub fn page_infinity(&self, i: usize) -> SpectralPage<F> {
        self.page(i, self.stable_stage(i))
    }

    /// `dim Gr^p H^n` for the induced filtration on cohomology, keyed `(p, n−p)`.
    pub fn cohomology_graded_dims(&self, i: usize) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for n in self.complex().degrees() {
            for (p, d) in self.cohomology_filtration(i, n).graded_dims() {
                if d > 0 {
                    out.insert((p, n - p), d);
                }
            }
        }
        out
    }
}

/// Map induced on `E_r` by a filtered morphism, per bidegree of the source.
pub fn page_map<F: Field>(
    f: &GradedMap<F>,
    ek: &SpectralPage<F>,
    el: &SpectralPage<F>,
) -> BTreeMap<(i32, i32), Matrix<F>> {
    let mut keys: Vec<(i32, i32)> = ek.cells.keys().chain(el.cells.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|(p, q)| {
            let m = match (ek.cells.get(&(p, q)), el.cells.get(&(p, q))) {
                (Some(a), Some(b)) => a.induced(&f.at(p + q), b),
                _ => Matrix::zeros(el.dim(p, q), ek.dim(p, q)),
            };
            ((p, q), m)
        })
        .collect()
}

/// `f` induces an isomorphism on `E_{r+1}` of filtration `i`.
pub fn is_er_quis<F: Field>(f: &GradedMap<F>, k: &FilteredComplex<F>, l: &FilteredComplex<F>, i: usize, r: u32) -> bool {
    let ek = k.page(i, r + 1);
    let el = l.page(i, r + 1);
    page_map(f, &ek, &el).values().all(Matrix::is_invertible)
}

/// `E_{0,0}`: isomorphisms on every `H(Gr_p^W Gr_F^q)`; `E_{r+1,0}` by décalage in `W`.
pub fn is_er0_quis<F: Field>(f: &GradedMap<F>, k: &FilteredComplex<F>, l: &FilteredComplex<F>, r: u32) -> bool {
    if r > 0 {
        return is_er0_quis(f, &k.decalage(super::W), &l.decalage(super::W), r - 1);
    }
    let (wlo, wtop) = hull(k.filtration(super::W).window(), l.filtration(super::W).window());
    let (flo, ftop) = hull(k.filtration(super::HODGE_F).window(), l.filtration(super::HODGE_F).window());
    let (nlo, nhi) = k.grading().hull(l.grading());
    for wp in wlo..wtop {
        // internal W index wp is W_{-wp}
        let p = -wp;
        for q in flo..ftop {
            for n in nlo..=nhi {
                let hk = bigraded_cohomology(k, p, q, n);
                let hl = bigraded_cohomology(l, p, q, n);
                if !hk.induced(&f.at(n), &hl).is_invertible() {
                    return false;
                }
            }
        }
    }
    true
}

fn hull(a: (i32, i32), b: (i32, i32)) -> (i32, i32) {
    (a.0.min(b.0), a.1.max(b.1))
}

/// `H^n(Gr_p^W Gr_F^q K)` as a subquotient of `K^n`.
pub fn bigraded_cohomology<F: Field>(k: &FilteredComplex<F>, p: i32, q: i32, n: i32) -> Subquotient<F> {
    let piece = k.bigraded_piece(p, q, n);
    let next = k.bigraded_piece(p, q, n + 1);
    let prev = k.bigraded_piece(p, q, n - 1);
    let cyc = piece.num.meet(&Subspace::preimage(&k.d(n), &next.den).expect("shapes"));
    let bd = prev.num.image_under(&k.d(n - 1)).join(&piece.den);
    Subquotient::new(cyc, bd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rational;
    use crate::filtered::{Chain, Complex, Direction, Filtration, W};
    use crate::random;

    fn bete_identity() -> FilteredComplex<Rational> {
        let k = Complex::new(0, vec![1, 1], vec![Matrix::identity(1)]).unwrap();
        FilteredComplex::trivially_filtered(k).shift(0)
    }

    #[test]
    fn trivial_filtration_pages() {
        let d = Matrix::<Rational>::from_ints(1, 2, &[1, 0]);
        let k = FilteredComplex::trivially_filtered(Complex::new(0, vec![2, 1], vec![d]).unwrap());
        let e0 = k.page(0, 0);
        assert_eq!(e0.dims(), BTreeMap::from([((0, 0), 2), ((0, 1), 1)]));
        let e1 = k.page(0, 1);
        assert_eq!(e1.dims(), BTreeMap::from([((0, 0), 1)]));
    }

    #[test]
    fn bete_pages() {
        // 3-term complex ℚ → ℚ³ → ℚ with cohomology in the middle only
        let d0 = Matrix::<Rational>::from_ints(3, 1, &[1, 0, 0]);
        let d1 = Matrix::<Rational>::from_ints(1, 3, &[0, 0, 1]);
        let k = Complex::new(0, vec![1, 3, 1], vec![d0, d1]).unwrap();
        let sigma = FilteredComplex::trivially_filtered(k.clone()).shift(0);
        let e0 = sigma.page(0, 0);
        assert_eq!(e0.dims(), BTreeMap::from([((0, 0), 1), ((1, 0), 3), ((2, 0), 1)]));
        assert!(e0.differentials.values().all(Matrix::is_zero));
        let e1 = sigma.page(0, 1);
        assert_eq!(e1.dims(), e0.dims());
        assert_eq!(e1.differential(0, 0), d_in_coords(&e1, &k, 0));
        let e2 = sigma.page(0, 2);
        assert_eq!(e2.dims(), BTreeMap::from([((1, 0), 1)]));
    }

    fn d_in_coords(e: &SpectralPage<Rational>, k: &Complex<Rational>, p: i32) -> Matrix<Rational> {
        e.cells[&(p, 0)].induced(&k.d(p), &e.cells[&(p + 1, 0)])
    }

    #[test]
    fn worked_example_pages() {
        let k = crate::filtered::fcomplex::tests::worked_example();
        let e1 = k.page(0, 1);
        assert_eq!(e1.dim(0, 0), 0);
        assert_eq!(e1.dim(0, 1), 0);
        assert_eq!(e1.dim(1, 0), 1);
        assert_eq!(e1.dims(), BTreeMap::from([((1, 0), 1)]));
        let dec = k.decalage(0);
        assert_eq!(dec.page(0, 1).dim(0, 1), 1);
    }

    #[test]
    fn er_quis_examples() {
        let k = bete_identity();
        let id = GradedMap::identity(k.grading());
        assert!((0..4).all(|r| is_er_quis(&id, &k, &k, 0, r)));
        // 0 → (ℚ = ℚ), trivially filtered
        let acyclic = FilteredComplex::trivially_filtered(k.complex().clone());
        let zero = FilteredComplex::trivially_filtered(Complex::zero_differential(0, vec![0, 0]));
        let z = GradedMap::zero(0, zero.grading(), acyclic.grading());
        assert!(is_er_quis(&z, &zero, &acyclic, 0, 0));
        // the bête-filtered acyclic complex onto 0: the jump survives to E_1 only
        let to_zero = GradedMap::zero(0, k.grading(), zero.grading());
        assert!(!is_er_quis(&to_zero, &k, &zero, 0, 0));
        assert!(is_er_quis(&to_zero, &k, &zero, 0, 1));
    }

    #[test]
    fn jr_model_examples() {
        let flat = FilteredComplex::trivially_filtered(Complex::<Rational>::zero_differential(0, vec![2, 1]));
        for r in 0..3 {
            let (q, eps) = flat.jr_model(0, r);
            if r == 0 {
                assert_eq!(q, flat);
            }
            assert!(q.is_in_cr(0, r as i32));
            assert!(is_er_quis(&eps, &q, &flat, 0, r));
        }
        let acyclic = FilteredComplex::trivially_filtered(bete_identity().complex().clone());
        let (q, eps) = acyclic.jr_model(0, 0);
        assert_eq!(q, acyclic);
        assert!(is_er_quis(&eps, &q, &acyclic, 0, 0));
        let (q1, _) = acyclic.jr_model(0, 1);
        assert_eq!(q1, acyclic.decalage(0).shift(0));
        assert!(q1.chain(0, 0).is_finer_than(&acyclic.chain(0, 0)));
    }

    #[test]
    fn jr_model_random() {
        let mut rng = random::rng(7);
        for _ in 0..100 {
            let k = random::filtered_complex::<Rational>(&mut rng, Default::default(), true);
            for r in 0..3 {
                let (q, eps) = k.jr_model(0, r);
                assert!(q.is_in_cr(0, r as i32));
                assert!(crate::filtered::preserves(&eps, &q, &k, &[0]));
                assert!(is_er_quis(&eps, &q, &k, 0, r));
            }
        }
    }

    fn bifiltered(dim: usize, w: Chain<Rational>, f: Chain<Rational>) -> FilteredComplex<Rational> {
        FilteredComplex::new(
            Complex::zero_differential(0, vec![dim]),
            vec![Filtration::new("W", Direction::Increasing, vec![w]), Filtration::new("F", Direction::Decreasing, vec![f])],
        )
        .unwrap()
    }

    #[test]
    fn er0_examples() {
        let e1 = Subspace::span(2, &[vec![Rational::from_int(1), Rational::from_int(0)]]);
        let k = bifiltered(2, Chain::trivial(2), Chain::from_levels(2, 0, vec![Subspace::full(2), e1.clone()]));
        let l = bifiltered(2, Chain::trivial(2), Chain::from_levels(2, 1, vec![Subspace::full(2), e1]));
        let id = GradedMap::identity(k.grading());
        assert!(crate::filtered::preserves(&id, &k, &l, &[0, 0]));
        assert!((0..3).all(|r| is_er0_quis(&id, &k, &k, r)));
        assert!((0..3).all(|r| !is_er0_quis(&id, &k, &l, r)));
        assert_eq!(k.bigraded(0, 0).dim(0), 1);
        assert_eq!(k.bigraded(0, 1).dim(0), 1);
        assert_eq!(l.bigraded(0, 0).dim(0), 0);
    }

    #[test]
    fn er10_unrolls_to_decalage() {
        let mut rng = random::rng(11);
        for _ in 0..30 {
            let k = random::filtered_complex::<Rational>(&mut rng, Default::default(), true);
            let w = random::filtration_chains(&mut rng, k.complex(), -1, 3, true);
            let kb = FilteredComplex::new(
                k.complex().clone(),
                vec![Filtration::new("W", Direction::Increasing, w), k.filtration(0).clone()],
            )
            .unwrap();
            let f = random::chain_map(&mut rng, &kb, &kb, true, true);
            let dec = kb.decalage(W);
            assert_eq!(is_er0_quis(&f, &kb, &kb, 1), is_er0_quis(&f, &dec, &dec, 0));
        }
    }
}

use crate::error::{invalid, shape, Result};
use crate::exactla::{Field, Matrix, Subspace};

use super::chain::{Chain, Direction, Filtration};
use super::complex::{Complex, GradedMap, Grading, Subquotient};

/// A bounded complex with one or more finite, exhaustive, regular and
/// `d`-compatible filtrations. For bifiltered complexes index 0 is `W` and
/// index 1 is `F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FilteredComplex<F> {
    complex: Complex<F>,
    filtrations: Vec<Filtration<F>>,
}

pub const W: usize = 0;
pub const HODGE_F: usize = 1;

impl<F: Field> FilteredComplex<F> {
    pub fn new(complex: Complex<F>, filtrations: Vec<Filtration<F>>) -> Result<Self> {
        let k = FilteredComplex { complex, filtrations };
        k.validate()?;
        Ok(k)
    }

    pub fn single(complex: Complex<F>, direction: Direction, chains: Vec<Chain<F>>) -> Result<Self> {
        let name = if direction == Direction::Increasing { "W" } else { "F" };
        Self::new(complex, vec![Filtration::new(name, direction, chains)])
    }

    /// Every space filtered by `F^0 = K`, `F^1 = 0`.
    pub fn trivially_filtered(complex: Complex<F>) -> Self {
        let chains = complex.degrees().map(|n| Chain::trivial(complex.dim(n))).collect();
        FilteredComplex { complex, filtrations: vec![Filtration::new("F", Direction::Decreasing, chains)] }
    }

    fn validate(&self) -> Result<()> {
        let len = self.complex.grading().dims.len();
        for f in &self.filtrations {
            if f.chains.len() != len {
                return Err(shape(format!("filtration {} has {} degrees, complex has {}", f.name, f.chains.len(), len)));
            }
            for (n, c) in self.complex.degrees().zip(&f.chains) {
                if c.dim() != self.complex.dim(n) {
                    return Err(shape(format!("filtration {} in degree {n} lives on the wrong space", f.name)));
                }
            }
        }
        for i in 0..self.filtrations.len() {
            for n in self.complex.degrees() {
                let c = self.chain(i, n);
                for p in c.lo()..=c.top() {
                    let img = c.get(p).image_under(&self.complex.d(n));
                    if !img.is_subspace_of(&self.level(i, p, n + 1)) {
                        return Err(invalid(format!(
                            "differential leaves filtration {} at level {p} in degree {n}",
                            self.filtrations[i].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &Complex<F> {
        &self.complex
    }

    pub fn grading(&self) -> &Grading {
        self.complex.grading()
    }

    pub fn filtrations(&self) -> &[Filtration<F>] {
        &self.filtrations
    }

    pub fn filtration(&self, i: usize) -> &Filtration<F> {
        &self.filtrations[i]
    }

    pub fn nfilt(&self) -> usize {
        self.filtrations.len()
    }

    pub fn dim(&self, n: i32) -> usize {
        self.complex.dim(n)
    }

    pub fn d(&self, n: i32) -> std::borrow::Cow<'_, Matrix<F>> {
        self.complex.d(n)
    }

    pub fn chain(&self, i: usize, n: i32) -> Chain<F> {
        let k = n - self.complex.lo();
        if k < 0 || k as usize >= self.filtrations[i].chains.len() {
            return Chain::trivial(0);
        }
        self.filtrations[i].chains[k as usize].clone()
    }

    /// `F^p K^n` in the internal decreasing indexing.
    pub fn level(&self, i: usize, p: i32, n: i32) -> Subspace<F> {
        let k = n - self.complex.lo();
        if k < 0 || k as usize >= self.filtrations[i].chains.len() {
            return Subspace::zero(0);
        }
        self.filtrations[i].chains[k as usize].get(p)
    }

    /// `W_p K^n` for an increasing filtration.
    pub fn w_level(&self, i: usize, p: i32, n: i32) -> Subspace<F> {
        self.level(i, -p, n)
    }

    /// Replaces filtration `i` by per-degree chains computed from `f(n, chain)`.
    pub fn map_filtration(&self, i: usize, f: impl Fn(i32, &Chain<F>) -> Chain<F>) -> Self {
        let lo = self.complex.lo();
        let mut filtrations = self.filtrations.clone();
        filtrations[i] = self.filtrations[i].map_chains(|k, c| f(lo + k as i32, c));
        FilteredComplex { complex: self.complex.clone(), filtrations }
    }

    pub fn with_filtrations(&self, filtrations: Vec<Filtration<F>>) -> Result<Self> {
        Self::new(self.complex.clone(), filtrations)
    }

    /// Keeps only the first `k` filtrations.
    pub fn truncate(&self, k: usize) -> Self {
        FilteredComplex { complex: self.complex.clone(), filtrations: self.filtrations[..k].to_vec() }
    }

    /// `Gr^p` of filtration `i`, with the induced differential.
    pub fn graded(&self, i: usize, p: i32) -> Complex<F> {
        let pieces: Vec<Subquotient<F>> =
            self.complex.degrees().map(|n| Subquotient::new(self.level(i, p, n), self.level(i, p + 1, n))).collect();
        self.subquotient_complex(&pieces)
    }

    /// `Gr^p` of filtration `i` carrying the other filtrations, induced.
    pub fn graded_filtered(&self, i: usize, p: i32) -> Self {
        let pieces: Vec<Subquotient<F>> =
            self.complex.degrees().map(|n| Subquotient::new(self.level(i, p, n), self.level(i, p + 1, n))).collect();
        let filtrations = (0..self.nfilt()).filter(|&j| j != i).map(|j| self.induced_filtration(j, &pieces)).collect();
        FilteredComplex { complex: self.subquotient_complex(&pieces), filtrations }
    }

    /// Map `Gr^p K → Gr^p L` of filtration `i` induced by a filtered `f`, in
    /// the coordinates of [`Self::graded`].
    pub fn graded_map(&self, f: &GradedMap<F>, l: &Self, i: usize, p: i32) -> GradedMap<F> {
        let gk = self.graded(i, p);
        let gl = l.graded(i, p);
        GradedMap::from_fn(f.degree, gk.grading(), gl.grading(), |n| {
            let a = Subquotient::new(self.level(i, p, n), self.level(i, p + 1, n));
            let m = n + f.degree;
            let b = Subquotient::new(l.level(i, p, m), l.level(i, p + 1, m));
            a.induced(&f.at(n), &b)
        })
    }

    /// Filtration `j` induced on a subquotient, one piece per degree.
    pub fn induced_filtration(&self, j: usize, pieces: &[Subquotient<F>]) -> Filtration<F> {
        let (lo, top) = self.padded_window(j);
        let chains = self
            .complex
            .degrees()
            .zip(pieces)
            .map(|(n, s)| {
                Chain::from_fn(s.dim(), lo, top, |q| self.level(j, q, n).meet(&s.num).image_under(&s.q.projection))
            })
            .collect();
        let f = &self.filtrations[j];
        Filtration::new(f.name.clone(), f.direction, chains)
    }

    /// `Gr_p^W Gr_F^q` for a bifiltered complex (`W` increasing).
    pub fn bigraded(&self, p: i32, q: i32) -> Complex<F> {
        let pieces: Vec<Subquotient<F>> = self.complex.degrees().map(|n| self.bigraded_piece(p, q, n)).collect();
        self.subquotient_complex(&pieces)
    }

    pub fn bigraded_piece(&self, p: i32, q: i32, n: i32) -> Subquotient<F> {
        let wp = self.w_level(W, p, n);
        let wp1 = self.w_level(W, p - 1, n);
        let fq = self.level(HODGE_F, q, n);
        let fq1 = self.level(HODGE_F, q + 1, n);
        let num = wp.meet(&fq);
        Subquotient::new(num.clone(), wp1.meet(&fq).join(&wp.meet(&fq1)))
    }

    /// Complex of subquotients, one per degree, with the induced differential.
    pub fn subquotient_complex(&self, pieces: &[Subquotient<F>]) -> Complex<F> {
        let lo = self.complex.lo();
        let dims: Vec<usize> = pieces.iter().map(Subquotient::dim).collect();
        let diffs = (0..pieces.len())
            .map(|k| match pieces.get(k + 1) {
                Some(next) => pieces[k].induced(&self.complex.d(lo + k as i32), next),
                None => Matrix::zeros(0, pieces[k].dim()),
            })
            .collect();
        Complex::new(lo, dims, diffs).expect("subquotient complex")
    }

    /// Window of internal levels of filtration `i`, padded by one on each side.
    fn padded_window(&self, i: usize) -> (i32, i32) {
        let (lo, top) = self.filtrations[i].window();
        (lo - 1, top + 1)
    }

    /// `S F^p K^n = F^{p−n} K^n`.
    pub fn shift(&self, i: usize) -> Self {
        self.map_filtration(i, |n, c| c.reindex(n))
    }

    /// `Dec F^p K^n = F^{p+n} K^n ∩ d^{-1}(F^{p+n+1} K^{n+1})`.
    pub fn decalage(&self, i: usize) -> Self {
        let (lo, top) = self.padded_window(i);
        self.map_filtration(i, |n, c| {
            let d = self.complex.d(n);
            Chain::from_fn(c.dim(), lo - n - 1, top - n, |p| {
                let pre = Subspace::preimage(&d, &self.level(i, p + n + 1, n + 1)).expect("shapes");
                self.level(i, p + n, n).meet(&pre)
            })
        })
    }

    /// `Dec* F^p K^n = d(F^{p+n−1} K^{n−1}) + F^{p+n} K^n`.
    pub fn dual_decalage(&self, i: usize) -> Self {
        let (lo, top) = self.padded_window(i);
        self.map_filtration(i, |n, c| {
            let d = self.complex.d(n - 1);
            Chain::from_fn(c.dim(), lo - n - 1, top - n + 1, |p| {
                self.level(i, p + n - 1, n - 1).image_under(&d).join(&self.level(i, p + n, n))
            })
        })
    }

    /// `d(F^p) ⊆ F^{p+r}` for all `p`.
    pub fn is_in_cr(&self, i: usize, r: i32) -> bool {
        let (lo, top) = self.padded_window(i);
        self.complex.degrees().all(|n| {
            let d = self.complex.d(n);
            (lo..=top).all(|p| self.level(i, p, n).image_under(&d).is_subspace_of(&self.level(i, p + r, n + 1)))
        })
    }

    /// `T(K)^n = K^{n+1}` with `−d` and `F^p T(K)^n = F^{p + shifts[i]} K^{n+1}`.
    pub fn translate(&self, shifts: &[i32]) -> Self {
        assert_eq!(shifts.len(), self.filtrations.len());
        let filtrations = self
            .filtrations
            .iter()
            .zip(shifts)
            .map(|(f, &s)| f.map_chains(|_, c| c.reindex(-s)))
            .collect();
        FilteredComplex { complex: self.complex.translate(), filtrations }
    }

    /// Degreewise and levelwise direct sum; all parts need the same number of filtrations.
    pub fn direct_sum(parts: &[&Self]) -> Self {
        let nf = parts[0].nfilt();
        assert!(parts.iter().all(|k| k.nfilt() == nf), "direct sum of differently filtered complexes");
        let complex = Complex::direct_sum(&parts.iter().map(|k| &k.complex).collect::<Vec<_>>());
        let filtrations = (0..nf)
            .map(|i| {
                let chains = complex
                    .degrees()
                    .map(|n| {
                        let cs: Vec<Chain<F>> = parts.iter().map(|k| k.chain(i, n)).collect();
                        Chain::direct_sum(&cs.iter().collect::<Vec<_>>())
                    })
                    .collect();
                let f0 = &parts[0].filtrations[i];
                Filtration::new(f0.name.clone(), f0.direction, chains)
            })
            .collect();
        FilteredComplex { complex, filtrations }
    }

    /// Cohomology in degree `n` with the filtration induced by filtration `i`:
    /// `F^p H^n = im(H^n(F^p K) → H^n(K))`, in cohomology coordinates.
    pub fn cohomology_filtration(&self, i: usize, n: i32) -> Chain<F> {
        let h = self.complex.cohomology(n);
        let z = self.complex.cycles(n);
        let (lo, top) = self.padded_window(i);
        Chain::from_fn(h.dim(), lo, top, |p| {
            let cyc = self.level(i, p, n).meet(&z);
            cyc.image_under(&h.q.projection)
        })
    }

    /// `𝒥_r(K) = S^r Dec^r K` on filtration `i`, with the identity map to `K`.
    pub fn jr_model(&self, i: usize, r: u32) -> (Self, GradedMap<F>) {
        let mut q = self.clone();
        for _ in 0..r {
            q = q.decalage(i);
        }
        for _ in 0..r {
            q = q.shift(i);
        }
        let eps = GradedMap::identity(self.grading());
        (q, eps)
    }

    pub fn is_rational(&self) -> bool {
        self.complex.diffs().iter().all(Matrix::is_rational)
            && self.filtrations.iter().all(|f| f.chains.iter().all(Chain::is_rational))
    }
}

/// Whether `f` sends filtration `i` of `k` into filtration `i` of `l` shifted
/// by `shifts[i]`: `f(F^p K^n) ⊆ F^{p + shifts[i]} L^{n + deg}`.
pub fn preserves<F: Field>(f: &GradedMap<F>, k: &FilteredComplex<F>, l: &FilteredComplex<F>, shifts: &[i32]) -> bool {
    shifts.iter().enumerate().all(|(i, &s)| {
        let (lo, top) = k.padded_window(i);
        k.complex.degrees().all(|n| {
            let m = f.at(n);
            (lo..=top).all(|p| k.level(i, p, n).image_under(&m).is_subspace_of(&l.level(i, p + s, n + f.degree)))
        })
    })
}

/// A chain map of degree 0 preserving the first `l.nfilt()` filtrations.
pub fn is_filtered_morphism<F: Field>(f: &GradedMap<F>, k: &FilteredComplex<F>, l: &FilteredComplex<F>) -> bool {
    f.degree == 0
        && &f.source == k.grading()
        && &f.target == l.grading()
        && k.nfilt() >= l.nfilt()
        && f.is_chain_map(k.complex(), l.complex())
        && preserves(f, k, l, &vec![0; l.nfilt()])
}

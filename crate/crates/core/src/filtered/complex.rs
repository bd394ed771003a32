use std::borrow::Cow;

use crate::error::{invalid, shape, Result};
use crate::exactla::{Field, Matrix, Quotient, Subspace};

/// Degree window and per-degree dimensions of a bounded graded space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    pub lo: i32,
    pub dims: Vec<usize>,
}

impl Grading {
    pub fn new(lo: i32, dims: Vec<usize>) -> Self {
        Grading { lo, dims }
    }

    pub fn dim(&self, n: i32) -> usize {
        let k = n - self.lo;
        if k < 0 || k as usize >= self.dims.len() {
            0
        } else {
            self.dims[k as usize]
        }
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Smallest window containing both.
    pub fn hull(&self, other: &Grading) -> (i32, i32) {
        (self.lo.min(other.lo), self.hi().max(other.hi()))
    }

    pub fn shifted(&self, by: i32) -> Grading {
        Grading { lo: self.lo + by, dims: self.dims.clone() }
    }
}

/// A bounded cochain complex of finite-dimensional spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex<F> {
    grading: Grading,
    diffs: Vec<Matrix<F>>,
}

impl<F: Field> Complex<F> {
    /// `diffs[k]` is the differential leaving degree `lo + k`; the last one
    /// may be omitted.
    pub fn new(lo: i32, dims: Vec<usize>, mut diffs: Vec<Matrix<F>>) -> Result<Self> {
        let len = dims.len();
        if diffs.len() + 1 == len || (len == 0 && diffs.is_empty()) {
            if let Some(&last) = dims.last() {
                diffs.push(Matrix::zeros(0, last));
            }
        }
        if diffs.len() != len {
            return Err(shape(format!("{} differentials for {} degrees", diffs.len(), len)));
        }
        for k in 0..len {
            let next = if k + 1 < len { dims[k + 1] } else { 0 };
            if diffs[k].shape() != (next, dims[k]) {
                return Err(shape(format!(
                    "differential in degree {} has shape {:?}, expected {:?}",
                    lo + k as i32,
                    diffs[k].shape(),
                    (next, dims[k])
                )));
            }
        }
        let c = Complex { grading: Grading::new(lo, dims), diffs };
        for n in c.grading.degrees() {
            if !(&*c.d(n + 1) * &*c.d(n)).is_zero() {
                return Err(invalid(format!("d∘d ≠ 0 in degree {n}")));
            }
        }
        Ok(c)
    }

    pub fn zero_differential(lo: i32, dims: Vec<usize>) -> Self {
        let diffs = (0..dims.len())
            .map(|k| Matrix::zeros(dims.get(k + 1).copied().unwrap_or(0), dims[k]))
            .collect();
        Complex { grading: Grading::new(lo, dims), diffs }
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn lo(&self) -> i32 {
        self.grading.lo
    }

    pub fn hi(&self) -> i32 {
        self.grading.hi()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.grading.degrees()
    }

    pub fn dim(&self, n: i32) -> usize {
        self.grading.dim(n)
    }

    /// `d: K^n → K^{n+1}`, zero outside the window.
    pub fn d(&self, n: i32) -> Cow<'_, Matrix<F>> {
        let k = n - self.lo();
        if k >= 0 && (k as usize) < self.diffs.len() {
            Cow::Borrowed(&self.diffs[k as usize])
        } else {
            Cow::Owned(Matrix::zeros(self.dim(n + 1), self.dim(n)))
        }
    }

    pub fn diffs(&self) -> &[Matrix<F>] {
        &self.diffs
    }

    pub fn cycles(&self, n: i32) -> Subspace<F> {
        Subspace::kernel(&self.d(n))
    }

    pub fn boundaries(&self, n: i32) -> Subspace<F> {
        Subspace::image(&self.d(n - 1))
    }

    pub fn cohomology(&self, n: i32) -> Subquotient<F> {
        Subquotient::new(self.cycles(n), self.boundaries(n))
    }

    pub fn betti(&self, n: i32) -> usize {
        self.cycles(n).dim() - self.boundaries(n).dim()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|n| self.betti(n) == 0)
    }

    /// Same spaces, differential `−d`, degrees lowered by one: `T(K)^n = K^{n+1}`.
    pub fn translate(&self) -> Self {
        Complex { grading: self.grading.shifted(-1), diffs: self.diffs.iter().map(|m| -m).collect() }
    }

    pub fn direct_sum(parts: &[&Self]) -> Self {
        let lo = parts.iter().filter(|c| !c.grading.dims.is_empty()).map(|c| c.lo()).min().unwrap_or(0);
        let hi = parts.iter().filter(|c| !c.grading.dims.is_empty()).map(|c| c.hi()).max().unwrap_or(lo - 1);
        let dims: Vec<usize> = (lo..=hi).map(|n| parts.iter().map(|c| c.dim(n)).sum()).collect();
        let diffs = (lo..=hi)
            .map(|n| {
                let ds: Vec<Matrix<F>> = parts.iter().map(|c| c.d(n).into_owned()).collect();
                Matrix::block_diag(&ds.iter().collect::<Vec<_>>())
            })
            .collect();
        Complex { grading: Grading::new(lo, dims), diffs }
    }

    /// Replaces the differentials, keeping the grading; checks `d∘d = 0`.
    pub fn with_diffs(&self, diffs: Vec<Matrix<F>>) -> Result<Self> {
        Self::new(self.lo(), self.grading.dims.clone(), diffs)
    }
}

/// A linear map of graded spaces raising degree by `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap<F> {
    pub degree: i32,
    pub source: Grading,
    pub target: Grading,
    blocks: Vec<Matrix<F>>,
}

impl<F: Field> GradedMap<F> {
    /// `blocks[k]` acts on source degree `source.lo + k`.
    pub fn new(degree: i32, source: Grading, target: Grading, blocks: Vec<Matrix<F>>) -> Result<Self> {
        if blocks.len() != source.dims.len() {
            return Err(shape(format!("{} blocks for {} source degrees", blocks.len(), source.dims.len())));
        }
        for (k, b) in blocks.iter().enumerate() {
            let n = source.lo + k as i32;
            let want = (target.dim(n + degree), source.dim(n));
            if b.shape() != want {
                return Err(shape(format!("block in degree {n} has shape {:?}, expected {:?}", b.shape(), want)));
            }
        }
        Ok(GradedMap { degree, source, target, blocks })
    }

    pub fn from_fn(degree: i32, source: &Grading, target: &Grading, mut f: impl FnMut(i32) -> Matrix<F>) -> Self {
        let blocks = source.degrees().map(&mut f).collect();
        Self::new(degree, source.clone(), target.clone(), blocks).expect("block shapes")
    }

    pub fn zero(degree: i32, source: &Grading, target: &Grading) -> Self {
        Self::from_fn(degree, source, target, |n| Matrix::zeros(target.dim(n + degree), source.dim(n)))
    }

    pub fn identity(g: &Grading) -> Self {
        Self::from_fn(0, g, g, |n| Matrix::identity(g.dim(n)))
    }

    /// Block leaving source degree `n`.
    pub fn at(&self, n: i32) -> Cow<'_, Matrix<F>> {
        let k = n - self.source.lo;
        if k >= 0 && (k as usize) < self.blocks.len() {
            Cow::Borrowed(&self.blocks[k as usize])
        } else {
            Cow::Owned(Matrix::zeros(self.target.dim(n + self.degree), self.source.dim(n)))
        }
    }

    pub fn blocks(&self) -> &[Matrix<F>] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(other.target, self.source, "composition of incompatible graded maps");
        let degree = self.degree + other.degree;
        Self::from_fn(degree, &other.source, &self.target, |n| &*self.at(n + other.degree) * &*other.at(n))
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(&Matrix<F>, &Matrix<F>) -> Matrix<F>) -> Self {
        assert_eq!((self.degree, &self.source, &self.target), (other.degree, &other.source, &other.target));
        GradedMap {
            degree: self.degree,
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map_blocks(|m| -m)
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map_blocks(|m| m.scale(c))
    }

    pub fn map_blocks(&self, f: impl Fn(&Matrix<F>) -> Matrix<F>) -> Self {
        GradedMap {
            degree: self.degree,
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(f).collect(),
        }
    }

    /// Reinterprets the map between other gradings with the same dimensions.
    pub fn regrade(&self, degree: i32, source: Grading, target: Grading) -> Result<Self> {
        Self::new(degree, source, target, self.blocks.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.blocks.iter().all(Matrix::is_rational)
    }

    /// `d_L f − (−1)^deg f d_K`.
    pub fn boundary(&self, k: &Complex<F>, l: &Complex<F>) -> Self {
        let sign = if self.degree.rem_euclid(2) == 0 { F::one() } else { -F::one() };
        Self::from_fn(self.degree + 1, &self.source, &self.target, |n| {
            let a = &*l.d(n + self.degree) * &*self.at(n);
            let b = &*self.at(n + 1) * &*k.d(n);
            &a - &b.scale(&sign)
        })
    }

    pub fn is_chain_map(&self, k: &Complex<F>, l: &Complex<F>) -> bool {
        self.boundary(k, l).is_zero()
    }

    /// Map induced on cohomology in degree `n`, in the presentations of
    /// [`Complex::cohomology`].
    pub fn on_cohomology(&self, k: &Complex<F>, l: &Complex<F>, n: i32) -> Matrix<F> {
        k.cohomology(n).induced(&self.at(n), &l.cohomology(n + self.degree))
    }

    pub fn is_quasi_iso(&self, k: &Complex<F>, l: &Complex<F>) -> bool {
        let (lo, hi) = k.grading().hull(l.grading());
        (lo..=hi).all(|n| self.on_cohomology(k, l, n).is_invertible())
    }
}

/// `num / den` for subspaces `den ⊆ num` of a common ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient<F> {
    pub num: Subspace<F>,
    pub den: Subspace<F>,
    pub q: Quotient<F>,
}

impl<F: Field> Subquotient<F> {
    pub fn new(num: Subspace<F>, den: Subspace<F>) -> Self {
        let q = num.quotient(&den).expect("denominator inside numerator");
        Subquotient { num, den, q }
    }

    pub fn dim(&self) -> usize {
        self.q.dim
    }

    /// Matrix of the map induced by `m` into `target`; `m` must send `num`
    /// into `target.num` and `den` into `target.den`.
    pub fn induced(&self, m: &Matrix<F>, target: &Subquotient<F>) -> Matrix<F> {
        &target.q.projection * &(m * &self.q.section)
    }

    /// Whether `m` induces a well-defined map into `target`.
    pub fn maps_into(&self, m: &Matrix<F>, target: &Subquotient<F>) -> bool {
        target.num.contains_columns(&(m * &self.num.inclusion()))
            && target.den.contains_columns(&(m * &self.den.inclusion()))
    }
}

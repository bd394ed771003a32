use super::matrix::Matrix;
use super::scalar::Field;
use crate::error::{Error, Result};

/// A linear subspace of `F^ambient`, stored as the reduced row echelon form
/// of any spanning set. Two subspaces are equal iff their forms coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

/// `U / V` presented inside the ambient space of `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient<F> {
    pub dim: usize,
    /// `dim × ambient`; vanishes on `V` and on a fixed complement of `U`.
    pub projection: Matrix<F>,
    /// `ambient × dim`; columns lie in `U`.
    pub section: Matrix<F>,
}

/// Incremental row echelon basis, used to extend bases.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ambient: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ambient: usize) -> Self {
        Echelon { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub_ref(&c.mul_ref(r));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }

    /// Adds `v` if it is independent of the current rows; reports whether it was.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv();
        for x in w.iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x = x.sub_ref(&c.mul_ref(y));
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn into_subspace(self) -> Subspace<F> {
        Subspace::span(self.ambient, &self.rows)
    }
}

impl<F: Field> Subspace<F> {
    fn from_rref(ambient: usize, m: Matrix<F>, pivots: Vec<usize>) -> Self {
        let k = pivots.len();
        let basis = if m.rows() == k { m } else { m.block(0, 0, k, ambient) };
        Subspace { basis, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the given vectors.
    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        Self::row_space(&Matrix::from_rows(ambient, vectors.to_vec()))
    }

    pub fn row_space(m: &Matrix<F>) -> Self {
        let (r, pivots) = m.rref();
        Self::from_rref(m.cols(), r, pivots)
    }

    /// Column span of `m`, inside its target.
    pub fn image(m: &Matrix<F>) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn kernel(m: &Matrix<F>) -> Self {
        Self::span(m.cols(), &m.kernel_basis())
    }

    /// `{x : m x ∈ v}`.
    pub fn preimage(m: &Matrix<F>, v: &Self) -> Result<Self> {
        if m.rows() != v.ambient() {
            return Err(Error::AmbientMismatch { left: m.rows(), right: v.ambient() });
        }
        if v.is_full() {
            return Ok(Self::full(m.cols()));
        }
        Ok(Self::kernel(&(&v.annihilator() * m)))
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient() - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// Canonical generators, one per row.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<F>> {
        self.basis.to_rows()
    }

    /// `ambient × dim` inclusion matrix.
    pub fn inclusion(&self) -> Matrix<F> {
        self.basis.transpose()
    }

    /// Matrix whose kernel is exactly this subspace.
    pub fn annihilator(&self) -> Matrix<F> {
        let n = self.ambient();
        let rows = self.basis.kernel_basis();
        if rows.is_empty() {
            return Matrix::zeros(0, n);
        }
        Matrix::from_rows(n, rows)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let c: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.transpose().apply(&c);
        (back.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient(), "vector outside the ambient space");
        self.coordinates(v).is_some()
    }

    pub fn contains_columns(&self, m: &Matrix<F>) -> bool {
        (0..m.cols()).all(|j| self.contains(&m.column(j)))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient() == other.ambient()
            && self.dim() <= other.dim()
            && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch { left: self.ambient(), right: other.ambient() });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if other.is_zero() || self.is_full() {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_full() {
            return Ok(other.clone());
        }
        Ok(Self::row_space(&self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        Ok(Self::kernel(&self.annihilator().vstack(&other.annihilator())))
    }

    /// Infallible sum for callers that already share the ambient space.
    pub fn join(&self, other: &Self) -> Self {
        self.sum(other).expect("ambient mismatch")
    }

    /// Infallible intersection for callers that already share the ambient space.
    pub fn meet(&self, other: &Self) -> Self {
        self.intersect(other).expect("ambient mismatch")
    }

    pub fn sum_all<'a>(ambient: usize, parts: impl IntoIterator<Item = &'a Self>) -> Self {
        parts.into_iter().fold(Self::zero(ambient), |acc, s| acc.join(s))
    }

    /// `m(self)`.
    pub fn image_under(&self, m: &Matrix<F>) -> Self {
        assert_eq!(m.cols(), self.ambient(), "map does not act on this subspace");
        if self.is_zero() {
            return Self::zero(m.rows());
        }
        Self::image(&(m * &self.inclusion()))
    }

    /// Coordinatewise conjugation.
    pub fn conjugate(&self) -> Self {
        Self::row_space(&self.basis.conj())
    }

    pub fn is_rational(&self) -> bool {
        self.basis.is_rational()
    }

    /// Whether the sum of `parts` is direct and equals `self`.
    pub fn is_direct_sum_of(&self, parts: &[Self]) -> bool {
        let total: usize = parts.iter().map(Self::dim).sum();
        total == self.dim() && Self::sum_all(self.ambient(), parts) == *self
    }

    /// Extends a basis of `self` to a basis of `outer`, returning the added vectors.
    pub fn complement_in(&self, outer: &Self) -> Vec<Vec<F>> {
        let mut e = Echelon::new(self.ambient());
        for v in self.vectors() {
            e.insert(&v);
        }
        outer.vectors().into_iter().filter(|v| e.insert(v)).collect()
    }

    /// `self / v`. Requires `v ⊆ self`.
    pub fn quotient(&self, v: &Self) -> Result<Quotient<F>> {
        self.check_ambient(v)?;
        if !v.is_subspace_of(self) {
            return Err(Error::NotContained);
        }
        let n = self.ambient();
        let c = v.complement_in(self);
        let k = c.len();
        if k == 0 {
            return Ok(Quotient { dim: 0, projection: Matrix::zeros(0, n), section: Matrix::zeros(n, 0) });
        }
        let e = self.complement_in(&Self::full(n));
        let mut cols = v.vectors();
        cols.extend(c.iter().cloned());
        cols.extend(e);
        let frame = Matrix::from_columns(n, &cols);
        let inv = frame.inverse().expect("extended basis is invertible");
        Ok(Quotient { dim: k, projection: inv.block(v.dim(), 0, k, n), section: Matrix::from_columns(n, &c) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::scalar::{Gaussian, Rational};
    use num_complex::Complex;
    use num_traits::{One, Zero};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn image_and_kernel_examples() {
        assert!(Subspace::image(&Matrix::<Rational>::identity(2)).is_full());
        let k = Subspace::kernel(&Matrix::<Rational>::zeros(2, 3));
        assert!(k.is_full() && k.ambient() == 3);
        let line = Subspace::image(&Matrix::<Rational>::from_ints(2, 1, &[1, 1]));
        assert_eq!(line, Subspace::span(2, &[qs(&[1, 1])]));
        assert_eq!(line.dim(), 1);
    }

    #[test]
    fn lattice_examples() {
        let x = Subspace::span(2, &[qs(&[1, 0])]);
        let y = Subspace::span(2, &[qs(&[0, 1])]);
        let d = Subspace::span(2, &[qs(&[1, 1])]);
        assert_eq!(x.join(&x), x);
        assert!(x.meet(&y).is_zero());
        assert!(x.join(&d).is_full());
        assert!(x.meet(&d).is_zero());
        assert_eq!(x.join(&d).dim() + x.meet(&d).dim(), x.dim() + d.dim());
        assert!(x.sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn preimage_examples() {
        let d = Matrix::<Rational>::from_ints(1, 2, &[1, 0]);
        assert!(Subspace::preimage(&d, &Subspace::full(1)).unwrap().is_full());
        let p = Subspace::preimage(&d, &Subspace::zero(1)).unwrap();
        assert_eq!(p, Subspace::span(2, &[qs(&[0, 1])]));
        assert_eq!(p, Subspace::kernel(&d));
    }

    #[test]
    fn quotient_examples() {
        let full = Subspace::<Rational>::full(2);
        assert_eq!(full.quotient(&full).unwrap().dim, 0);
        let qz = full.quotient(&Subspace::zero(2)).unwrap();
        assert_eq!(qz.dim, 2);
        assert!(qz.projection.is_invertible());
        let line = Subspace::span(2, &[qs(&[1, 1])]);
        let ql = full.quotient(&line).unwrap();
        assert_eq!(ql.dim, 1);
        assert_eq!(&ql.projection * &ql.section, Matrix::identity(1));
        assert!(ql.projection.apply(&qs(&[1, 1])).iter().all(Zero::is_zero));
        assert!(line.quotient(&full).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let i = Complex::<Rational>::i();
        let s = Subspace::span(2, &[vec![Gaussian::one(), i.clone()]]);
        let c = s.conjugate();
        assert_eq!(c, Subspace::span(2, &[vec![Gaussian::one(), -i]]));
        assert_eq!(c.conjugate(), s);
        let r = Subspace::span(2, &[vec![Gaussian::from_int(2), Gaussian::from_int(3)]]);
        assert_eq!(r.conjugate(), r);
    }

    #[test]
    fn echelon_extends() {
        let mut e = Echelon::<Rational>::new(3);
        assert!(e.insert(&qs(&[1, 2, 0])));
        assert!(!e.insert(&qs(&[2, 4, 0])));
        assert!(e.insert(&qs(&[0, 0, 5])));
        assert!(e.contains(&qs(&[1, 2, 7])));
        assert_eq!(e.into_subspace().dim(), 2);
    }
}

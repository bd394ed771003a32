//! Linear systems whose unknowns are matrices, solved over ℚ.
//!
//! An unknown block ranges over the ℚ-span of a finite set of matrices. This
//! covers free matrices over ℚ or ℚ(i), matrices defined over ℚ inside a
//! ℚ(i)-complex, and matrices compatible with given filtrations.

use super::matrix::Matrix;
use super::scalar::{Field, Rational};
use super::subspace::Subspace;
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Restriction {
    /// Entries are rational.
    Rational,
    /// Entries range over the whole field.
    Full,
}

#[derive(Clone, Debug)]
pub struct ParamBlock<F> {
    pub rows: usize,
    pub cols: usize,
    pub basis: Vec<Matrix<F>>,
}

impl<F: Field> ParamBlock<F> {
    fn realify(rows: usize, cols: usize, field_basis: Vec<Matrix<F>>, restriction: Restriction) -> Self {
        let basis = match restriction {
            Restriction::Rational => field_basis,
            Restriction::Full => field_basis
                .iter()
                .flat_map(|b| F::basis().into_iter().map(move |e| b.scale(&e)))
                .collect(),
        };
        ParamBlock { rows, cols, basis }
    }

    pub fn free(rows: usize, cols: usize, restriction: Restriction) -> Self {
        let units = (0..rows * cols)
            .map(|k| {
                let mut m = Matrix::zeros(rows, cols);
                m[(k / cols, k % cols)] = F::one();
                m
            })
            .collect();
        Self::realify(rows, cols, units, restriction)
    }

    /// Matrices `rows × cols` sending every `source` subspace into the paired
    /// `target` subspace. With [`Restriction::Rational`] the constraint
    /// subspaces must be defined over ℚ.
    pub fn compatible(
        rows: usize,
        cols: usize,
        constraints: &[(Subspace<F>, Subspace<F>)],
        restriction: Restriction,
    ) -> Self {
        let mut eqs: Vec<Vec<F>> = Vec::new();
        for (src, tgt) in constraints {
            assert_eq!(src.ambient(), cols);
            assert_eq!(tgt.ambient(), rows);
            if src.is_zero() || tgt.is_full() {
                continue;
            }
            let ann = tgt.annihilator();
            for a in 0..ann.rows() {
                for g in src.vectors() {
                    let mut eq = vec![F::zero(); rows * cols];
                    for i in 0..rows {
                        if ann[(a, i)].is_zero() {
                            continue;
                        }
                        for j in 0..cols {
                            eq[i * cols + j] = ann[(a, i)].mul_ref(&g[j]);
                        }
                    }
                    eqs.push(eq);
                }
            }
        }
        if eqs.is_empty() || rows * cols == 0 {
            return Self::free(rows, cols, restriction);
        }
        let field_basis: Vec<Matrix<F>> = Subspace::span(rows * cols, &eqs)
            .basis()
            .kernel_basis()
            .into_iter()
            .map(|v| Matrix::from_rows(cols, v.chunks(cols).map(<[F]>::to_vec).collect()))
            .collect();
        if restriction == Restriction::Rational {
            debug_assert!(field_basis.iter().all(Matrix::is_rational));
        }
        Self::realify(rows, cols, field_basis, restriction)
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn combine(&self, coeffs: &[Rational]) -> Matrix<F> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (b, c) in self.basis.iter().zip(coeffs) {
            if !c.is_zero() {
                m = &m + &b.scale(&F::from_rational(c.clone()));
            }
        }
        m
    }
}

/// An ordered family of unknown blocks.
#[derive(Clone, Debug, Default)]
pub struct ParamLayout<F> {
    blocks: Vec<ParamBlock<F>>,
}

impl<F: Field> ParamLayout<F> {
    pub fn new() -> Self {
        ParamLayout { blocks: Vec::new() }
    }

    /// Appends a block and returns its index.
    pub fn push(&mut self, block: ParamBlock<F>) -> usize {
        self.blocks.push(block);
        self.blocks.len() - 1
    }

    pub fn blocks(&self) -> &[ParamBlock<F>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(ParamBlock::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn zero(&self) -> Vec<Matrix<F>> {
        self.blocks.iter().map(|b| Matrix::zeros(b.rows, b.cols)).collect()
    }

    pub fn assemble(&self, params: &[Rational]) -> Vec<Matrix<F>> {
        assert_eq!(params.len(), self.len());
        let mut off = 0;
        self.blocks
            .iter()
            .map(|b| {
                let m = b.combine(&params[off..off + b.len()]);
                off += b.len();
                m
            })
            .collect()
    }

    /// Matrix over ℚ of a linear map from the parameter space. Columns are
    /// parameters, rows the ℚ-coordinates of the flattened output.
    pub fn matrix_of(&self, map: impl Fn(&[Matrix<F>]) -> Vec<Matrix<F>>) -> Matrix<Rational> {
        let mut columns = Vec::with_capacity(self.len());
        let mut rows = flatten(&map(&self.zero())).len();
        for (bi, b) in self.blocks.iter().enumerate() {
            for e in &b.basis {
                let mut args = self.zero();
                args[bi] = e.clone();
                let out = flatten(&map(&args));
                rows = out.len();
                columns.push(out);
            }
        }
        Matrix::from_columns(rows, &columns)
    }

    /// Solves `map(x) = target` for `x` in the parameter space.
    pub fn solve(
        &self,
        map: impl Fn(&[Matrix<F>]) -> Vec<Matrix<F>>,
        target: &[Matrix<F>],
    ) -> Option<Vec<Matrix<F>>> {
        let a = self.matrix_of(&map);
        let b = flatten(target);
        assert_eq!(a.rows(), b.len(), "target shape does not match the map");
        let x = a.solve(&b)?;
        Some(self.assemble(&x))
    }

    /// ℚ-basis of the kernel of `map`, as assembled block families.
    pub fn kernel(&self, map: impl Fn(&[Matrix<F>]) -> Vec<Matrix<F>>) -> Vec<Vec<Matrix<F>>> {
        self.matrix_of(map).kernel_basis().iter().map(|v| self.assemble(v)).collect()
    }
}

/// Concatenated ℚ-coordinates of all entries.
pub fn flatten<F: Field>(ms: &[Matrix<F>]) -> Vec<Rational> {
    ms.iter().flat_map(|m| m.entries().iter().flat_map(F::parts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::scalar::Gaussian;

    #[test]
    fn free_block_sizes() {
        assert_eq!(ParamBlock::<Gaussian>::free(2, 3, Restriction::Full).len(), 12);
        assert_eq!(ParamBlock::<Gaussian>::free(2, 3, Restriction::Rational).len(), 6);
        assert_eq!(ParamBlock::<Rational>::free(2, 3, Restriction::Full).len(), 6);
    }

    #[test]
    fn compatible_block_respects_flag() {
        // maps ℚ² → ℚ² sending span(e1) into span(e1): upper triangular
        let e1 = Subspace::span(2, &[vec![Rational::from_int(1), Rational::from_int(0)]]);
        let b = ParamBlock::compatible(2, 2, &[(e1.clone(), e1.clone())], Restriction::Full);
        assert_eq!(b.len(), 3);
        for m in &b.basis {
            assert!(e1.image_under(m).is_subspace_of(&e1));
        }
    }

    #[test]
    fn solves_commutator_equation() {
        // find X with A X - X A = C for A = [[0,1],[0,0]]
        let a = Matrix::<Rational>::from_ints(2, 2, &[0, 1, 0, 0]);
        let mut layout = ParamLayout::new();
        layout.push(ParamBlock::free(2, 2, Restriction::Full));
        let map = |x: &[Matrix<Rational>]| vec![&(&a * &x[0]) - &(&x[0] * &a)];
        let c = Matrix::from_ints(2, 2, &[1, 0, 0, -1]);
        let x = layout.solve(map, std::slice::from_ref(&c)).unwrap();
        assert_eq!(map(&x)[0], c);
        assert!(layout.solve(map, &[Matrix::identity(2)]).is_none());
        assert_eq!(layout.kernel(map).len(), 2);
    }
}

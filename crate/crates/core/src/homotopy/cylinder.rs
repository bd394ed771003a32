use crate::exactla::{Field, Matrix};
use crate::filtered::{Complex, FilteredComplex, GradedMap, Grading};

use super::{stage_shifts, HomotopyCertificate};

/// `Cyl_r(f, g) = T_r(X) ⊕ Y ⊕ Z` with `D(x, y, z) = (−dx, −f x + dy, g x + dz)`.
#[derive(Clone, Debug)]
pub struct DoubleCylinder<F> {
    pub cyl: FilteredComplex<F>,
    /// `Z → Cyl`, `z ↦ (0, 0, z)`.
    pub i: GradedMap<F>,
    /// `Y → Cyl`, `y ↦ (0, y, 0)`.
    pub j: GradedMap<F>,
    /// Degree −1, `x ↦ (x, 0, 0)`: a homotopy from `j f` to `i g`.
    pub k: GradedMap<F>,
    pub r: i32,
    x: Grading,
    y: Grading,
    z: Grading,
}

fn column_block<F: Field>(sizes: [usize; 3], at: usize) -> Matrix<F> {
    let rows: usize = sizes.iter().sum();
    let off: usize = sizes[..at].iter().sum();
    let mut m = Matrix::zeros(rows, sizes[at]);
    for t in 0..sizes[at] {
        m[(off + t, t)] = F::one();
    }
    m
}

impl<F: Field> DoubleCylinder<F> {
    fn sizes(&self, n: i32) -> [usize; 3] {
        [self.x.dim(n + 1), self.y.dim(n), self.z.dim(n)]
    }

    /// Projection of `Cyl^n` onto summand `at` (0: `X^{n+1}`, 1: `Y^n`, 2: `Z^n`).
    pub fn component(&self, n: i32, at: usize) -> Matrix<F> {
        column_block::<F>(self.sizes(n), at).transpose()
    }

    /// `t(x, y, z) = h(x) + u(y) + v(z)` for `h: u f ≃ v g`; `u`, `v` of
    /// degree `e` and `h` of degree `e − 1`.
    pub fn assemble(&self, h: &GradedMap<F>, u: &GradedMap<F>, v: &GradedMap<F>) -> GradedMap<F> {
        let target = u.target.clone();
        let e = u.degree;
        GradedMap::from_fn(e, self.cyl.grading(), &target, |n| {
            let parts = [h.at(n + 1).into_owned(), u.at(n).into_owned(), v.at(n).into_owned()];
            let mut m = Matrix::zeros(target.dim(n + e), self.cyl.dim(n));
            for (at, p) in parts.iter().enumerate() {
                m = &m + &(p * &self.component(n, at));
            }
            m
        })
    }

    /// Inclusion of summand `at` into `Cyl^n`.
    pub fn embed(&self, n: i32, at: usize) -> Matrix<F> {
        column_block(self.sizes(n), at)
    }

    /// `t ↦ (t k, t j, t i)`.
    pub fn disassemble(&self, t: &GradedMap<F>) -> (GradedMap<F>, GradedMap<F>, GradedMap<F>) {
        (t.compose(&self.k), t.compose(&self.j), t.compose(&self.i))
    }
}

/// Double mapping cylinder of `f: X → Y`, `g: X → Z` at stage `r`.
pub fn double_cylinder<F: Field>(
    f: &GradedMap<F>,
    g: &GradedMap<F>,
    x: &FilteredComplex<F>,
    y: &FilteredComplex<F>,
    z: &FilteredComplex<F>,
    r: i32,
) -> DoubleCylinder<F> {
    assert_eq!(&f.source, x.grading(), "f does not start at X");
    assert_eq!(&g.source, x.grading(), "g does not start at X");
    let shifts = stage_shifts(r, x.nfilt());
    let tx = x.translate(&shifts);
    let sum = FilteredComplex::direct_sum(&[&tx, y, z]);
    let (lo, hi) = (sum.complex().lo(), sum.complex().hi());
    let dims: Vec<usize> = (lo..=hi).map(|n| sum.dim(n)).collect();
    let diffs = (lo..=hi)
        .map(|n| {
            let rows = [x.dim(n + 2), y.dim(n + 1), z.dim(n + 1)];
            let cols = [x.dim(n + 1), y.dim(n), z.dim(n)];
            let mdx = -&*x.d(n + 1);
            let mf = -&*f.at(n + 1);
            let gx = g.at(n + 1).into_owned();
            let dy = y.d(n).into_owned();
            let dz = z.d(n).into_owned();
            Matrix::from_blocks(
                &rows,
                &cols,
                &[
                    vec![Some(&mdx), None, None],
                    vec![Some(&mf), Some(&dy), None],
                    vec![Some(&gx), None, Some(&dz)],
                ],
            )
        })
        .collect();
    let complex = Complex::new(lo, dims, diffs).expect("D∘D = 0 for chain maps f, g");
    let cyl = FilteredComplex::new(complex, sum.filtrations().to_vec()).expect("filtered f and g");
    let (xg, yg, zg) = (x.grading().clone(), y.grading().clone(), z.grading().clone());
    let sizes = |n: i32| [xg.dim(n + 1), yg.dim(n), zg.dim(n)];
    let i = GradedMap::from_fn(0, &zg, cyl.grading(), |n| column_block(sizes(n), 2));
    let j = GradedMap::from_fn(0, &yg, cyl.grading(), |n| column_block(sizes(n), 1));
    let k = GradedMap::from_fn(-1, &xg, cyl.grading(), |n| column_block(sizes(n - 1), 0));
    DoubleCylinder { cyl, i, j, k, r, x: xg, y: yg, z: zg }
}

impl<F: Field> DoubleCylinder<F> {
    /// The certificate `k: j f ≃ i g`.
    pub fn k_certificate(&self, f: &GradedMap<F>, g: &GradedMap<F>) -> HomotopyCertificate<F> {
        HomotopyCertificate::new(self.j.compose(f), self.i.compose(g), self.k.clone(), self.r)
    }
}

/// Degree offsets of the three summands: `X^{n+1} ⊕ Y^n ⊕ Z^n`.
const OFFSETS: [i32; 3] = [1, 0, 0];

/// The map `src → tgt` of the given degree whose `(row, col)` block is
/// `m`, sending summand `col` of `src` to summand `row` of `tgt`. Each `m`
/// must have degree `degree + offset(row) − offset(col)`.
pub fn cylinder_map<F: Field>(
    src: &DoubleCylinder<F>,
    tgt: &DoubleCylinder<F>,
    degree: i32,
    entries: &[(usize, usize, &GradedMap<F>)],
) -> GradedMap<F> {
    GradedMap::from_fn(degree, src.cyl.grading(), tgt.cyl.grading(), |n| {
        let mut out = Matrix::zeros(tgt.cyl.dim(n + degree), src.cyl.dim(n));
        for &(row, col, m) in entries {
            assert_eq!(m.degree, degree + OFFSETS[row] - OFFSETS[col], "block degree");
            let b = &(&tgt.embed(n + degree, row) * &*m.at(n + OFFSETS[col])) * &src.component(n, col);
            out = &out + &b;
        }
        out
    })
}

/// Zero complex with the degree window and filtration count of `x`.
pub fn zero_like<F: Field>(x: &FilteredComplex<F>) -> FilteredComplex<F> {
    let c = Complex::zero_differential(x.complex().lo(), vec![0; x.grading().dims.len()]);
    let filtrations = x
        .filtrations()
        .iter()
        .map(|f| f.map_chains(|_, _| crate::filtered::Chain::trivial(0)))
        .collect();
    FilteredComplex::new(c, filtrations).expect("zero complex")
}

/// `C_r(f) = Cyl_r(0, f)` for `f: X → Y`; returns the double cylinder of
/// `X → 0` and `f`, so `cyl` has `X^{n+1} ⊕ 0 ⊕ Y^n` in degree `n`.
pub fn cone<F: Field>(f: &GradedMap<F>, x: &FilteredComplex<F>, y: &FilteredComplex<F>, r: i32) -> DoubleCylinder<F> {
    let zero = zero_like(x);
    let to_zero = GradedMap::zero(0, x.grading(), zero.grading());
    double_cylinder(&to_zero, f, x, &zero, y, r)
}

/// `Cyl_r(X) = Cyl_r(1, 1)` with projection `p(x, y, z) = y + z` and the
/// homotopy `h(x, y, z) = (z, 0, 0)` from `j p` to `1`.
#[derive(Clone, Debug)]
pub struct Cylinder<F> {
    pub double: DoubleCylinder<F>,
    pub p: GradedMap<F>,
    pub h: HomotopyCertificate<F>,
}

pub fn cylinder<F: Field>(x: &FilteredComplex<F>, r: i32) -> Cylinder<F> {
    let id = GradedMap::identity(x.grading());
    mapping_cylinder(&id, x, x, r)
}

/// `Cyl_r(f) = Cyl_r(f, 1_X)` for `f: X → Y`, with `p(x, y, z) = y + f(z)`:
/// `p i = f`, `p j = 1` and `h(x, y, z) = (z, 0, 0)` a homotopy from `j p` to `1`.
pub fn mapping_cylinder<F: Field>(f: &GradedMap<F>, x: &FilteredComplex<F>, y: &FilteredComplex<F>, r: i32) -> Cylinder<F> {
    let id = GradedMap::identity(x.grading());
    let double = double_cylinder(f, &id, x, y, x, r);
    let cyl = double.cyl.grading().clone();
    let p = double.assemble(&GradedMap::zero(-1, x.grading(), y.grading()), &GradedMap::identity(y.grading()), f);
    let h = GradedMap::from_fn(-1, &cyl, &cyl, |n| &column_block::<F>(double.sizes(n - 1), 0) * &double.component(n, 2));
    let jp = double.j.compose(&p);
    let h = HomotopyCertificate::new(jp, GradedMap::identity(&cyl), h, r);
    Cylinder { double, p, h }
}

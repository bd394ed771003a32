//! Seeded generators for test corpora and fuzzing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{Field, Matrix, Rational, Subspace};
use crate::filtered::{Chain, Complex, Direction, Filtration, FilteredComplex, GradedMap};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bounds for [`filtered_complex`].
#[derive(Clone, Copy, Debug)]
pub struct ComplexBounds {
    pub max_degrees: usize,
    pub max_dim: usize,
    pub max_levels: usize,
}

impl Default for ComplexBounds {
    fn default() -> Self {
        ComplexBounds { max_degrees: 5, max_dim: 6, max_levels: 4 }
    }
}

/// Small scalar; `rational` forces a rational value.
pub fn scalar<F: Field>(rng: &mut impl Rng, rational: bool) -> F {
    let parts: Vec<Rational> = (0..F::DEGREE)
        .map(|k| if k > 0 && rational { 0 } else { rng.gen_range(-2i64..=2) })
        .map(Rational::from_int)
        .collect();
    F::from_parts(&parts)
}

pub fn matrix<F: Field>(rng: &mut impl Rng, rows: usize, cols: usize, rational: bool) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |_, _| scalar(rng, rational))
}

pub fn vector<F: Field>(rng: &mut impl Rng, n: usize, rational: bool) -> Vec<F> {
    (0..n).map(|_| scalar(rng, rational)).collect()
}

/// Product of a random unit lower and unit upper triangular matrix.
pub fn invertible<F: Field>(rng: &mut impl Rng, n: usize, rational: bool) -> Matrix<F> {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            if rng.gen_bool(0.5) {
                lower[(i, j)] = scalar(rng, rational);
            }
            if rng.gen_bool(0.5) {
                upper[(j, i)] = scalar(rng, rational);
            }
        }
    }
    let perm = {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            p.swap(i, rng.gen_range(0..=i));
        }
        Matrix::from_fn(n, n, |i, j| if p[i] == j { F::one() } else { F::zero() })
    };
    &(&perm * &lower) * &upper
}

/// Random subspace spanned by at most `k` random vectors.
pub fn subspace<F: Field>(rng: &mut impl Rng, n: usize, k: usize, rational: bool) -> Subspace<F> {
    let vs: Vec<Vec<F>> = (0..k).map(|_| vector(rng, n, rational)).collect();
    Subspace::span(n, &vs)
}

/// Random bounded complex: a sum of contractible pieces and cohomology in
/// each degree, conjugated by random bases.
pub fn complex<F: Field>(rng: &mut impl Rng, lo: i32, dims: &[usize], rational: bool) -> Complex<F> {
    let len = dims.len();
    // rank of d^n, subject to rank d^{n-1} + rank d^n ≤ dim K^n
    let mut ranks = vec![0usize; len];
    let mut used_below = 0usize;
    for k in 0..len {
        let avail = dims[k].saturating_sub(used_below);
        let next = if k + 1 < len { dims[k + 1] } else { 0 };
        let r = if avail.min(next) == 0 { 0 } else { rng.gen_range(0..=avail.min(next)) };
        ranks[k] = r;
        used_below = r;
    }
    // standard basis: in degree k, first ranks[k-1] vectors are boundaries,
    // the last ranks[k] vectors map onto the boundaries of degree k+1
    let mut diffs = Vec::with_capacity(len);
    for k in 0..len {
        let next = if k + 1 < len { dims[k + 1] } else { 0 };
        let mut d = Matrix::zeros(next, dims[k]);
        for j in 0..ranks[k] {
            d[(j, dims[k] - ranks[k] + j)] = F::one();
        }
        diffs.push(d);
    }
    let bases: Vec<Matrix<F>> = dims.iter().map(|&n| invertible(rng, n, rational)).collect();
    let conj: Vec<Matrix<F>> = (0..len)
        .map(|k| {
            let inv = bases[k].inverse().unwrap();
            match bases.get(k + 1) {
                Some(b) => &(b * &diffs[k]) * &inv,
                None => Matrix::zeros(0, dims[k]),
            }
        })
        .collect();
    Complex::new(lo, dims.to_vec(), conj).expect("random complex")
}

/// A random `d`-compatible filtration on `k` occupying internal levels
/// `start..start + levels`: random generators closed under `d`.
pub fn filtration_chains<F: Field>(
    rng: &mut impl Rng,
    k: &Complex<F>,
    start: i32,
    levels: usize,
    rational: bool,
) -> Vec<Chain<F>> {
    let mut chains: Vec<Chain<F>> = Vec::new();
    let mut prev: Option<Chain<F>> = None;
    for n in k.degrees() {
        let dim = k.dim(n);
        let mut gens: Vec<(i32, Vec<F>)> = Vec::new();
        if levels > 1 {
            for _ in 0..rng.gen_range(0..=dim + 1) {
                let level = start + rng.gen_range(1..levels as i32);
                gens.push((level, vector(rng, dim, rational)));
            }
        }
        let d = k.d(n - 1);
        let chain = Chain::from_fn(dim, start, start + levels as i32, |p| {
            if p <= start {
                return Subspace::full(dim);
            }
            let vs: Vec<Vec<F>> = gens.iter().filter(|(l, _)| *l >= p).map(|(_, v)| v.clone()).collect();
            let g = Subspace::span(dim, &vs);
            let from_below = match &prev {
                Some(c) => c.get(p).image_under(&d),
                None => Subspace::zero(dim),
            };
            g.join(&from_below)
        });
        prev = Some(chain.clone());
        chains.push(chain);
    }
    chains
}

/// Random filtered complex within `bounds`.
pub fn filtered_complex<F: Field>(rng: &mut impl Rng, bounds: ComplexBounds, rational: bool) -> FilteredComplex<F> {
    let nd = rng.gen_range(1..=bounds.max_degrees);
    let lo = rng.gen_range(-2..=1);
    let dims: Vec<usize> = (0..nd).map(|_| rng.gen_range(0..=bounds.max_dim)).collect();
    let k = complex::<F>(rng, lo, &dims, rational);
    let levels = rng.gen_range(1..=bounds.max_levels);
    let start = rng.gen_range(-2..=1);
    let chains = filtration_chains(rng, &k, start, levels, rational);
    FilteredComplex::new(k, vec![Filtration::new("F", Direction::Decreasing, chains)]).expect("random filtration")
}

/// Random chain map `k → l` of degree 0: a random element of the kernel of
/// `f ↦ d f − f d`, optionally restricted to filtration-preserving maps.
pub fn chain_map<F: Field>(
    rng: &mut impl Rng,
    k: &FilteredComplex<F>,
    l: &FilteredComplex<F>,
    filtered: bool,
    rational: bool,
) -> GradedMap<F> {
    use crate::exactla::{ParamBlock, ParamLayout, Restriction};
    let restriction = if rational { Restriction::Rational } else { Restriction::Full };
    let degrees: Vec<i32> = k.complex().degrees().collect();
    let mut layout = ParamLayout::new();
    for &n in &degrees {
        let (rows, cols) = (l.dim(n), k.dim(n));
        let block = if filtered {
            let mut cons = Vec::new();
            for i in 0..l.nfilt() {
                let (a, b) = k.filtration(i).window();
                for p in a - 1..=b + 1 {
                    cons.push((k.level(i, p, n), l.level(i, p, n)));
                }
            }
            ParamBlock::compatible(rows, cols, &cons, restriction)
        } else {
            ParamBlock::free(rows, cols, restriction)
        };
        layout.push(block);
    }
    let g = |ms: &[Matrix<F>]| {
        GradedMap::new(0, k.grading().clone(), l.grading().clone(), ms.to_vec()).expect("shapes")
    };
    let basis = layout.kernel(|ms| g(ms).boundary(k.complex(), l.complex()).blocks().to_vec());
    let mut f = GradedMap::zero(0, k.grading(), l.grading());
    for b in basis {
        let c: F = scalar(rng, true);
        f = f.add(&g(&b).scale(&c));
    }
    f
}

/// Random vertex of the given kind: a complex filtered by `W`, plus `F` for
/// bifiltered vertices.
pub fn vertex<F: Field>(
    rng: &mut impl Rng,
    kind: crate::diagrams::VertexKind,
    lo: i32,
    nd: usize,
    bounds: ComplexBounds,
) -> FilteredComplex<F> {
    let rational = kind == crate::diagrams::VertexKind::Base;
    let dims: Vec<usize> = (0..nd).map(|_| rng.gen_range(0..=bounds.max_dim)).collect();
    let k = complex::<F>(rng, lo, &dims, rational);
    let mut filtrations = Vec::new();
    for (at, (name, direction)) in [("W", Direction::Increasing), ("F", Direction::Decreasing)].into_iter().enumerate() {
        if at < kind.nfilt() {
            let levels = rng.gen_range(1..=bounds.max_levels);
            let start = rng.gen_range(-1..=0);
            filtrations.push(Filtration::new(name, direction, filtration_chains(rng, &k, start, levels, rational)));
        }
    }
    FilteredComplex::new(k, filtrations).expect("random vertex")
}

/// Random diagram over `shape` with random filtered comparisons; all
/// vertices share one degree window.
pub fn diagram<F: Field>(rng: &mut impl Rng, shape: &crate::diagrams::ZigzagShape, bounds: ComplexBounds) -> crate::diagrams::Diagram<F> {
    let nd = rng.gen_range(1..=bounds.max_degrees);
    let lo = rng.gen_range(-1..=1);
    diagram_in(rng, shape, lo, nd, bounds)
}

/// Random diagram in degrees `lo..lo + nd`.
pub fn diagram_in<F: Field>(
    rng: &mut impl Rng,
    shape: &crate::diagrams::ZigzagShape,
    lo: i32,
    nd: usize,
    bounds: ComplexBounds,
) -> crate::diagrams::Diagram<F> {
    let vertices: Vec<FilteredComplex<F>> = shape.kinds().iter().map(|&k| vertex(rng, k, lo, nd, bounds)).collect();
    let comparisons = shape
        .arrows()
        .iter()
        .map(|a| chain_map(rng, &vertices[a.source], &vertices[a.target], true, false))
        .collect();
    crate::diagrams::Diagram::new(shape.clone(), vertices, comparisons).expect("random diagram")
}

/// Random admissible pre-morphism of the given degree at stage `r`.
pub fn pre_morphism<F: Field>(
    rng: &mut impl Rng,
    x: &crate::diagrams::Diagram<F>,
    y: &crate::diagrams::Diagram<F>,
    degree: i32,
    r: i32,
) -> crate::diagrams::PreMorphism<F> {
    use crate::exactla::ParamLayout;
    let mut layout = ParamLayout::new();
    let slot = crate::diagrams::PreSlot::push(&mut layout, x, y, degree, r);
    let coeffs: Vec<Rational> = (0..layout.len()).map(|_| scalar(rng, true)).collect();
    slot.read(&layout.assemble(&coeffs), x, y)
}

/// Random ho-morphism at stage `r`: a random element of `ker D` in degree 0.
pub fn ho_morphism<F: Field>(
    rng: &mut impl Rng,
    x: &crate::diagrams::Diagram<F>,
    y: &crate::diagrams::Diagram<F>,
    r: i32,
) -> crate::diagrams::PreMorphism<F> {
    let mut f = crate::diagrams::PreMorphism::zero(x, y, 0);
    for b in crate::diagrams::cycles(x, y, 0, r) {
        let c: F = scalar(rng, true);
        f = f.add(&b.scale(&c));
    }
    f
}

/// Random mixed Hodge structure: a sum of Tate pieces `ℚ(−k)`, `k ∈ {−1, 0, 1}`,
/// and (over a proper extension) weight-odd planes, with `F` moved by a
/// unipotent map lowering `W` and both bases changed at random.
pub fn mhs<F: Field>(rng: &mut impl Rng, max_pieces: usize) -> crate::hodge::MixedHodgeStructure<F> {
    use crate::hodge::{odd_plane, tate, MixedHodgeStructure};
    let count = rng.gen_range(0..=max_pieces);
    let mut parts = Vec::new();
    let mut weights = Vec::new();
    for _ in 0..count {
        let k = rng.gen_range(-1..=1);
        if F::DEGREE > 1 && k < 1 && rng.gen_bool(0.3) {
            parts.push(odd_plane::<F>(k));
            weights.extend([2 * k + 1; 2]);
        } else {
            parts.push(tate::<F>(k));
            weights.push(2 * k);
        }
    }
    if parts.is_empty() {
        return crate::hodge::examples::zero_mhs();
    }
    let h = MixedHodgeStructure::direct_sum(&parts.iter().collect::<Vec<_>>());
    let d = h.dim();
    let u = Matrix::from_fn(d, d, |i, j| {
        if i == j {
            F::one()
        } else if weights[i] < weights[j] {
            scalar(rng, false)
        } else {
            F::zero()
        }
    });
    h.move_hodge(&u)
        .change_rational_basis(&invertible(rng, d, true))
        .change_complex_basis(&invertible(rng, d, false))
}

/// Random bounded complex of mixed Hodge structures with differentials drawn
/// from `Hom_MHS`, at most `max_degrees` terms starting at `lo`.
pub fn mhs_complex<F: Field>(
    rng: &mut impl Rng,
    lo: i32,
    max_degrees: usize,
    max_pieces: usize,
) -> crate::hodge::MhsComplex<F> {
    use crate::hodge::hom_mhs_rational;
    use crate::hodge::MixedHodgeStructure;
    let len = rng.gen_range(1..=max_degrees.max(1));
    // consecutive terms share a summand so that `Hom_MHS` between them is nonzero
    let shared: Vec<MixedHodgeStructure<F>> = (0..len.saturating_sub(1))
        .map(|_| std::iter::repeat_with(|| mhs::<F>(rng, 1)).find(|h| h.dim() > 0).expect("nonzero structure"))
        .collect();
    let zero = crate::hodge::examples::zero_mhs::<F>();
    let terms: Vec<_> = (0..len)
        .map(|k| {
            let own = mhs::<F>(rng, max_pieces);
            let next = shared.get(k).unwrap_or(&zero);
            let prev = if k > 0 { &shared[k - 1] } else { &zero };
            let t = MixedHodgeStructure::direct_sum(&[&own, next, prev]);
            let b = invertible(rng, t.dim(), true);
            t.change_rational_basis(&b)
        })
        .collect();
    let mut diffs: Vec<Matrix<F>> = Vec::new();
    for k in 0..len.saturating_sub(1) {
        let (a, b) = (&terms[k], &terms[k + 1]);
        let basis = hom_mhs_rational(a, b);
        let prev = diffs.last().cloned().unwrap_or_else(|| Matrix::zeros(a.dim(), 0));
        let columns: Vec<Vec<Rational>> = basis.iter().map(|m| crate::exactla::flatten(&[m * &prev])).collect();
        let rows = b.dim() * prev.cols() * F::DEGREE;
        let allowed = Matrix::from_columns(rows, &columns).kernel_basis();
        let mut d = Matrix::zeros(b.dim(), a.dim());
        if rng.gen_bool(0.9) {
            for v in &allowed {
                let c: Rational = scalar(rng, true);
                for (m, x) in basis.iter().zip(v) {
                    d = &d + &m.scale(&F::from_rational(c.clone() * x.clone()));
                }
            }
        }
        diffs.push(d);
    }
    crate::hodge::MhsComplex::new(lo, terms, diffs).expect("random MHS complex")
}

/// Random absolute Hodge complex: a random complex of MHS as a diagram, with
/// the bifiltered vertex moved by a random basis change.
pub fn ahc<F: Field>(rng: &mut impl Rng, max_degrees: usize, max_pieces: usize) -> crate::diagrams::Diagram<F> {
    let c = mhs_complex::<F>(rng, 0, max_degrees, max_pieces);
    let twist: Vec<Matrix<F>> = c.terms.iter().map(|t| invertible(rng, t.dim(), false)).collect();
    c.to_diagram_twisted(Some(&twist)).expect("random AHC")
}

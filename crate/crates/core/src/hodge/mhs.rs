use std::collections::BTreeMap;

use crate::error::{invalid, shape, Error, Result};
use crate::exactla::{flatten, Field, Matrix, ParamBlock, Rational, Restriction, Subspace};
use crate::filtered::Chain;

/// `W_m` of a chain storing an increasing filtration (`W_m` is level `−m`).
pub fn w_level<F: Field>(w: &Chain<F>, m: i32) -> Subspace<F> {
    w.get(-m)
}

/// Range of `m` outside which `Gr_m^W = 0`.
fn weight_range<F: Field>(w: &Chain<F>) -> std::ops::RangeInclusive<i32> {
    (1 - w.top())..=(-w.lo())
}

/// `H_𝐤` with `W`, `H_ℂ` with `W` and `F`, and the comparison
/// `H_𝐤 ⊗ ℚ(i) → H_ℂ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedHodgeStructure<F> {
    pub rational_weight: Chain<F>,
    pub weight: Chain<F>,
    pub hodge: Chain<F>,
    pub comparison: Matrix<F>,
}

/// Witness that `Gr_m^W` is not pure: the Hodge pieces `F^p ∩ conj F^{m−p}`
/// span `span_dim` with total dimension `sum_dims` instead of `expected`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityFailure {
    pub weight: i32,
    pub expected: usize,
    pub sum_dims: usize,
    pub span_dim: usize,
}

impl<F: Field> MixedHodgeStructure<F> {
    pub fn new(rational_weight: Chain<F>, weight: Chain<F>, hodge: Chain<F>, comparison: Matrix<F>) -> Result<Self> {
        let d = weight.dim();
        if rational_weight.dim() != d || hodge.dim() != d || comparison.rows() != d || comparison.cols() != d {
            return Err(shape("mixed Hodge structure pieces have different dimensions"));
        }
        if !comparison.is_invertible() {
            return Err(Error::NotInvertible("comparison".into()));
        }
        if !rational_weight.is_rational() {
            return Err(invalid("rational weight filtration is not defined over the base field"));
        }
        Ok(MixedHodgeStructure { rational_weight, weight, hodge, comparison })
    }

    /// Rational structure `H_𝐤` itself: `W` on both sides, comparison `1`.
    pub fn split(weight: Chain<F>, hodge: Chain<F>) -> Result<Self> {
        let c = Matrix::identity(weight.dim());
        Self::new(weight.clone(), weight, hodge, c)
    }

    pub fn dim(&self) -> usize {
        self.weight.dim()
    }

    /// `conj(S)` taken through the rational structure: `c conj(c^{-1} S)`.
    pub fn conj(&self, s: &Subspace<F>) -> Subspace<F> {
        let inv = self.comparison.inverse().expect("invertible comparison");
        s.image_under(&inv).conjugate().image_under(&self.comparison)
    }

    /// `W_ℂ = c(W_𝐤 ⊗ ℚ(i))`.
    pub fn weight_is_rational(&self) -> bool {
        self.rational_weight.transport(&self.comparison) == self.weight
    }

    fn hodge_piece(&self, m: i32, p: i32) -> Subspace<F> {
        let wm1 = w_level(&self.weight, m - 1);
        let wm = w_level(&self.weight, m);
        let a = self.hodge.get(p).meet(&wm).join(&wm1);
        let b = self.conj(&self.hodge.get(m - p).meet(&wm).join(&wm1));
        a.meet(&b)
    }

    fn p_range(&self, m: i32) -> std::ops::RangeInclusive<i32> {
        (m - self.hodge.top())..=self.hodge.top()
    }

    /// Hodge numbers `h^{p,q}` of `Gr^W`.
    pub fn hodge_numbers(&self) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for m in weight_range(&self.weight) {
            let base = w_level(&self.weight, m - 1).dim();
            for p in self.p_range(m) {
                let d = self.hodge_piece(m, p).dim() - base;
                if d > 0 {
                    out.insert((p, m - p), d);
                }
            }
        }
        out
    }

    /// Weights `m` at which `Gr_m^W` fails to be pure of weight `m`.
    pub fn purity_failures(&self) -> Vec<PurityFailure> {
        let mut out = Vec::new();
        for m in weight_range(&self.weight) {
            let wm = w_level(&self.weight, m);
            let wm1 = w_level(&self.weight, m - 1);
            let expected = wm.dim() - wm1.dim();
            let pieces: Vec<Subspace<F>> = self.p_range(m).map(|p| self.hodge_piece(m, p)).collect();
            let sum_dims = pieces.iter().map(|s| s.dim() - wm1.dim()).sum();
            let span = Subspace::sum_all(self.dim(), pieces.iter()).join(&wm1);
            if sum_dims != expected || span != wm {
                out.push(PurityFailure { weight: m, expected, sum_dims, span_dim: span.dim() - wm1.dim() });
            }
        }
        out
    }

    pub fn is_mhs(&self) -> bool {
        self.weight_is_rational() && self.purity_failures().is_empty()
    }

    /// Pure of weight `m`: `W` jumps only at `m` and `Gr_m` is pure.
    pub fn is_pure_of_weight(&self, m: i32) -> bool {
        w_level(&self.weight, m).is_full() && w_level(&self.weight, m - 1).is_zero() && self.is_mhs()
    }

    pub fn direct_sum(parts: &[&Self]) -> Self {
        let chains = |f: fn(&Self) -> &Chain<F>| Chain::direct_sum(&parts.iter().map(|p| f(p)).collect::<Vec<_>>());
        let c = Matrix::block_diag(&parts.iter().map(|p| &p.comparison).collect::<Vec<_>>());
        MixedHodgeStructure {
            rational_weight: chains(|p| &p.rational_weight),
            weight: chains(|p| &p.weight),
            hodge: chains(|p| &p.hodge),
            comparison: c,
        }
    }

    /// New rational coordinates `v' = b v` (`b` rational invertible).
    pub fn change_rational_basis(&self, b: &Matrix<F>) -> Self {
        let inv = b.inverse().expect("invertible basis change");
        MixedHodgeStructure {
            rational_weight: self.rational_weight.transport(b),
            comparison: &self.comparison * &inv,
            ..self.clone()
        }
    }

    /// New complex coordinates `v' = g v`.
    pub fn change_complex_basis(&self, g: &Matrix<F>) -> Self {
        MixedHodgeStructure {
            rational_weight: self.rational_weight.clone(),
            weight: self.weight.transport(g),
            hodge: self.hodge.transport(g),
            comparison: g * &self.comparison,
        }
    }

    /// Replaces `F` by `u F`.
    pub fn move_hodge(&self, u: &Matrix<F>) -> Self {
        MixedHodgeStructure { hodge: self.hodge.transport(u), ..self.clone() }
    }
}

/// Pure Hodge check of a single space: `H = ⊕_{p+q=m} F^p ∩ conj F^q`.
pub fn is_pure_hs<F: Field>(hodge: &Chain<F>, comparison: &Matrix<F>, m: i32) -> Result<bool> {
    let d = hodge.dim();
    let w = Chain::concentrated(d, -m);
    Ok(MixedHodgeStructure::new(w.clone(), w, hodge.clone(), comparison.clone())?.is_pure_of_weight(m) || d == 0)
}

/// `ℚ(−k)`: dimension 1, weight `2k`, type `(k, k)`.
pub fn tate<F: Field>(k: i32) -> MixedHodgeStructure<F> {
    let w = Chain::concentrated(1, -2 * k);
    let f = Chain::concentrated(1, k);
    MixedHodgeStructure::split(w, f).expect("Tate structure")
}

/// Weight `2k + 1` plane with `F^{k+1} = span(1, i)`.
pub fn odd_plane<F: Field>(k: i32) -> MixedHodgeStructure<F> {
    let i = F::basis().last().cloned().expect("field basis");
    let line = Subspace::span(2, &[vec![F::one(), i]]);
    let w = Chain::concentrated(2, -(2 * k + 1));
    let f = Chain::from_levels(2, k, vec![Subspace::full(2), line]);
    MixedHodgeStructure::split(w, f).expect("weight-odd plane")
}

/// `I^{p,q}` with `⊕ I^{p,q} = H`, `W_m = ⊕_{p+q≤m} I^{p,q}`,
/// `F^l = ⊕_{p≥l} I^{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeligneSplitting<F> {
    pub pieces: BTreeMap<(i32, i32), Subspace<F>>,
}

impl<F: Field> DeligneSplitting<F> {
    /// Verifies the four defining invariants.
    pub fn check(&self, h: &MixedHodgeStructure<F>) -> bool {
        let d = h.dim();
        let all: Vec<Subspace<F>> = self.pieces.values().cloned().collect();
        if !Subspace::full(d).is_direct_sum_of(&all) {
            return false;
        }
        let in_place = self
            .pieces
            .iter()
            .all(|(&(p, q), s)| s.is_subspace_of(&w_level(&h.weight, p + q).meet(&h.hodge.get(p))));
        let sum_where = |pred: &dyn Fn(i32, i32) -> bool| {
            let parts: Vec<&Subspace<F>> = self.pieces.iter().filter(|((p, q), _)| pred(*p, *q)).map(|(_, s)| s).collect();
            Subspace::sum_all(d, parts)
        };
        let w_ok = weight_range(&h.weight)
            .chain([*weight_range(&h.weight).start() - 1])
            .all(|m| sum_where(&|p, q| p + q <= m) == w_level(&h.weight, m));
        let f_ok = (h.hodge.lo() - 1..=h.hodge.top()).all(|l| sum_where(&|p, _| p >= l) == h.hodge.get(l));
        in_place && w_ok && f_ok
    }
}

/// The bigrading `I^{p,q} = F^p ∩ W_{p+q} ∩ (conj F^q ∩ W_{p+q} + Σ_{j≥1} conj F^{q−j} ∩ W_{p+q−j−1})`.
pub fn deligne_splitting<F: Field>(h: &MixedHodgeStructure<F>) -> Result<DeligneSplitting<F>> {
    if !h.weight_is_rational() {
        return Err(Error::NotMhs("weight filtration is not defined over the base field".into()));
    }
    if let Some(f) = h.purity_failures().first() {
        return Err(Error::NotMhs(format!("Gr_{}^W is not pure", f.weight)));
    }
    let d = h.dim();
    let (lo, top) = (h.hodge.lo(), h.hodge.top());
    let wr = weight_range(&h.weight);
    let mut pieces = BTreeMap::new();
    for p in lo..top {
        for q in lo..top {
            let m = p + q;
            if !wr.contains(&m) {
                continue;
            }
            let wm = w_level(&h.weight, m);
            let mut inner = h.conj(&h.hodge.get(q)).meet(&wm);
            let mut j = 1;
            while m - j > *wr.start() - 1 {
                inner = inner.join(&h.conj(&h.hodge.get(q - j)).meet(&w_level(&h.weight, m - j - 1)));
                j += 1;
            }
            let s = h.hodge.get(p).meet(&wm).meet(&inner);
            if !s.is_zero() {
                pieces.insert((p, q), s);
            }
        }
    }
    let split = DeligneSplitting { pieces };
    if !split.check(h) {
        return Err(Error::Inconsistent(format!("bigrading of a {d}-dimensional structure fails its invariants")));
    }
    Ok(split)
}

/// `Hom` spaces between two structures as ℚ-subspaces of the ℚ-coordinates
/// of `Hom_ℂ(H_ℂ, H'_ℂ)`.
pub struct HomSpaces<F> {
    rows: usize,
    cols: usize,
    /// `Hom^W(H_ℂ, H'_ℂ)`.
    pub weight: Subspace<Rational>,
    /// `Hom^W_F(H_ℂ, H'_ℂ)`.
    pub hodge: Subspace<Rational>,
    /// `c' Hom^W(H_𝐤, H'_𝐤) c^{-1}`.
    pub rational: Subspace<Rational>,
    _f: std::marker::PhantomData<F>,
}

fn window_pairs<F: Field>(a: &Chain<F>, b: &Chain<F>) -> Vec<(Subspace<F>, Subspace<F>)> {
    let lo = a.lo().min(b.lo()) - 1;
    let top = a.top().max(b.top()) + 1;
    (lo..=top).map(|p| (a.get(p), b.get(p))).collect()
}

fn span_of<F: Field>(n: usize, ms: impl IntoIterator<Item = Matrix<F>>) -> Subspace<Rational> {
    let vs: Vec<Vec<Rational>> = ms.into_iter().map(|m| flatten(&[m])).collect();
    Subspace::span(n, &vs)
}

impl<F: Field> HomSpaces<F> {
    pub fn new(h: &MixedHodgeStructure<F>, h2: &MixedHodgeStructure<F>) -> Self {
        let (rows, cols) = (h2.dim(), h.dim());
        let n = rows * cols * F::basis().len();
        let w = window_pairs(&h.weight, &h2.weight);
        let mut wf = w.clone();
        wf.extend(window_pairs(&h.hodge, &h2.hodge));
        let wk = window_pairs(&h.rational_weight, &h2.rational_weight);
        let cinv = h.comparison.inverse().expect("invertible comparison");
        let weight = span_of(n, ParamBlock::compatible(rows, cols, &w, Restriction::Full).basis);
        let hodge = span_of(n, ParamBlock::compatible(rows, cols, &wf, Restriction::Full).basis);
        let rational = span_of(
            n,
            ParamBlock::compatible(rows, cols, &wk, Restriction::Rational)
                .basis
                .into_iter()
                .map(|g| &(&h2.comparison * &g) * &cinv),
        );
        HomSpaces { rows, cols, weight, hodge, rational, _f: std::marker::PhantomData }
    }

    /// The matrix with the given ℚ-coordinates.
    pub fn matrix(&self, v: &[Rational]) -> Matrix<F> {
        let k = F::basis().len();
        Matrix::from_fn(self.rows, self.cols, |i, j| F::from_parts(&v[(i * self.cols + j) * k..(i * self.cols + j + 1) * k]))
    }

    /// `Hom_MHS` in complex coordinates.
    pub fn mhs_morphisms(&self) -> Subspace<Rational> {
        self.rational.meet(&self.hodge)
    }
}

/// `Ext^n_MHS(H, H')`: dimension over ℚ and representatives (complex
/// coordinates).
#[derive(Clone, Debug)]
pub struct ExtGroup<F> {
    pub n: u32,
    pub dim: usize,
    pub representatives: Vec<Matrix<F>>,
}

pub fn ext<F: Field>(h: &MixedHodgeStructure<F>, h2: &MixedHodgeStructure<F>, n: u32) -> ExtGroup<F> {
    let spaces = HomSpaces::new(h, h2);
    let vectors = match n {
        0 => spaces.mhs_morphisms().vectors(),
        1 => spaces.rational.join(&spaces.hodge).complement_in(&spaces.weight),
        _ => Vec::new(),
    };
    ExtGroup { n, dim: vectors.len(), representatives: vectors.iter().map(|v| spaces.matrix(v)).collect() }
}

/// ℚ-basis of `Hom_MHS(H, H')` in rational coordinates `c'^{-1} M c`.
pub fn hom_mhs_rational<F: Field>(h: &MixedHodgeStructure<F>, h2: &MixedHodgeStructure<F>) -> Vec<Matrix<F>> {
    let spaces = HomSpaces::new(h, h2);
    let inv = h2.comparison.inverse().expect("invertible comparison");
    spaces.mhs_morphisms().vectors().iter().map(|v| &(&inv * &spaces.matrix(v)) * &h.comparison).collect()
}

/// Strictness of `g` (complex coordinates) with respect to `W` and `F`:
/// `g(W_m) = im g ∩ W'_m` and `g(F^p) = im g ∩ F'^p`.
pub fn is_strict<F: Field>(g: &Matrix<F>, h: &MixedHodgeStructure<F>, h2: &MixedHodgeStructure<F>) -> bool {
    let im = Subspace::image(g);
    let ok = |a: &Chain<F>, b: &Chain<F>| window_pairs(a, b).iter().all(|(s, t)| s.image_under(g) == im.meet(t));
    ok(&h.weight, &h2.weight) && ok(&h.hodge, &h2.hodge)
}

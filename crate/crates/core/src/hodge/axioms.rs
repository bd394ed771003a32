use std::fmt;

use crate::diagrams::{Diagram, VertexKind};
use crate::error::{invalid, Result};
use crate::exactla::{Field, Matrix, Subspace};
use crate::filtered::{page_map, FilteredComplex, W};

use super::mhs::is_pure_hs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Mhc,
    Ahc,
}

impl Mode {
    /// Stage of the `E_r^W`-quasi-isomorphisms in axiom 0.
    pub fn stage(self) -> u32 {
        match self {
            Mode::Mhc => 1,
            Mode::Ahc => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Mhc => "mhc",
            Mode::Ahc => "ahc",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "mhc" => Some(Mode::Mhc),
            "ahc" => Some(Mode::Ahc),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Mh0,
    Mh1,
    Mh2,
    Ah0,
    Ah1,
    Ah2,
}

impl Axiom {
    pub fn of(mode: Mode, k: usize) -> Self {
        match (mode, k) {
            (Mode::Mhc, 0) => Axiom::Mh0,
            (Mode::Mhc, 1) => Axiom::Mh1,
            (Mode::Mhc, _) => Axiom::Mh2,
            (Mode::Ahc, 0) => Axiom::Ah0,
            (Mode::Ahc, 1) => Axiom::Ah1,
            (Mode::Ahc, _) => Axiom::Ah2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::Mh0 => "MH0",
            Axiom::Mh1 => "MH1",
            Axiom::Mh2 => "MH2",
            Axiom::Ah0 => "AH0",
            Axiom::Ah1 => "AH1",
            Axiom::Ah2 => "AH2",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A failing location: cohomological degree, filtration level (weight index
/// in increasing convention where `W` is meant) and a description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub axiom: Axiom,
    pub degree: i32,
    pub level: i32,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeVerdict {
    pub mode: Mode,
    pub axioms: Vec<AxiomVerdict>,
}

impl HodgeVerdict {
    pub fn pass(&self) -> bool {
        self.axioms.iter().all(|a| a.pass)
    }

    pub fn failing(&self) -> Vec<Axiom> {
        self.axioms.iter().filter(|a| !a.pass).map(|a| a.axiom).collect()
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomVerdict> {
        self.axioms.iter().find(|a| a.axiom == axiom)
    }
}

/// The last vertex index, after checking the shape is a zig-zag from a base
/// vertex to a bifiltered one.
fn end_vertex<F: Field>(k: &Diagram<F>) -> Result<usize> {
    let s = k.shape();
    let last = s.len().checked_sub(1).ok_or_else(|| invalid("empty diagram"))?;
    if s.kind(0) != VertexKind::Base || s.kind(last) != VertexKind::Bifiltered || last % 2 == 1 {
        return Err(invalid("expected a zig-zag from a base vertex to a bifiltered vertex"));
    }
    for j in (1..last).step_by(2) {
        let has = |a: usize, b: usize| s.arrows().iter().any(|x| x.source == a && x.target == b);
        if !has(j - 1, j) || !has(j + 1, j) {
            return Err(invalid("expected arrows 0 → 1 ← 2 → ⋯ ← s"));
        }
    }
    Ok(last)
}

fn arrow_index<F: Field>(k: &Diagram<F>, a: usize, b: usize) -> usize {
    k.shape().arrows().iter().position(|x| x.source == a && x.target == b).expect("zig-zag arrow")
}

/// Composite `V_0 → V_s` of the forward arrows and inverses of the backward
/// ones, for per-arrow matrices `m(u)`; `None` if a backward map is singular.
pub fn zigzag_transport<F: Field>(k: &Diagram<F>, m: impl Fn(usize) -> Matrix<F>) -> Result<Option<Matrix<F>>> {
    let last = end_vertex(k)?;
    let mut acc: Option<Matrix<F>> = None;
    for j in (1..last).step_by(2) {
        let fwd = m(arrow_index(k, j - 1, j));
        let Some(back) = m(arrow_index(k, j + 1, j)).inverse() else { return Ok(None) };
        let step = &back * &fwd;
        acc = Some(match acc {
            None => step,
            Some(a) => &step * &a,
        });
    }
    Ok(acc)
}

fn w_window<F: Field>(k: &Diagram<F>) -> (i32, i32) {
    k.vertices()
        .iter()
        .map(|v| v.filtration(W).window())
        .fold((i32::MAX, i32::MIN), |(a, b), (c, d)| (a.min(c), b.max(d)))
}

fn degrees<F: Field>(k: &Diagram<F>) -> (i32, i32) {
    k.vertices().iter().fold((i32::MAX, i32::MIN), |(a, b), v| (a.min(v.complex().lo()), b.max(v.complex().hi())))
}

/// `H^n(Gr^W)` transport at internal `W` level `q`.
fn graded_transport<F: Field>(k: &Diagram<F>, q: i32, n: i32) -> Result<Option<Matrix<F>>> {
    zigzag_transport(k, |u| {
        let a = k.shape().arrow(u);
        let (x, y) = (k.vertex(a.source), k.vertex(a.target));
        let g = x.graded_map(k.comparison(u), y, W, q);
        g.on_cohomology(&x.graded(W, q), &y.graded(W, q), n)
    })
}

fn axiom_zero<F: Field>(k: &Diagram<F>, mode: Mode) -> Result<AxiomVerdict> {
    let axiom = Axiom::of(mode, 0);
    let r = mode.stage();
    let mut witnesses = Vec::new();
    for (u, a) in k.shape().arrows().iter().enumerate() {
        let (x, y) = (k.vertex(a.source), k.vertex(a.target));
        let ex = x.page(W, r + 1);
        let ey = y.page(W, r + 1);
        for ((p, qq), m) in page_map(k.comparison(u), &ex, &ey) {
            if !m.is_invertible() {
                witnesses.push(Witness {
                    axiom,
                    degree: p + qq,
                    level: -p,
                    detail: format!("comparison {u} is not an isomorphism on E_{}^({p},{qq}) of W", r + 1),
                });
            }
        }
    }
    if mode == Mode::Mhc {
        let (wlo, wtop) = w_window(k);
        let (nlo, nhi) = degrees(k);
        for q in wlo - 1..=wtop {
            for n in nlo..=nhi {
                let ok = graded_transport(k, q, n)?.is_some_and(|t| t.is_invertible());
                if !ok {
                    witnesses.push(Witness {
                        axiom,
                        degree: n,
                        level: -q,
                        detail: format!("comparison string is not invertible on H^{n}(Gr_{}^W)", -q),
                    });
                }
            }
        }
    }
    Ok(AxiomVerdict { axiom, pass: witnesses.is_empty(), witnesses })
}

/// `c` carrying only its filtration `i`.
pub fn only<F: Field>(c: &FilteredComplex<F>, i: usize) -> FilteredComplex<F> {
    c.with_filtrations(vec![c.filtration(i).clone()]).expect("same complex")
}

/// Whether `d` is strict for filtration 0 of `c`, listing failures as
/// `(degree, level)`.
pub fn strictness_failures<F: Field>(c: &FilteredComplex<F>) -> Vec<(i32, i32)> {
    let mut out = Vec::new();
    let (lo, top) = c.filtration(0).window();
    for n in c.complex().degrees() {
        let d = c.d(n);
        let im = Subspace::image(&*d);
        for p in lo - 1..=top + 1 {
            if c.level(0, p, n).image_under(&d) != im.meet(&c.level(0, p, n + 1)) {
                out.push((n, p));
            }
        }
    }
    out
}

/// First `(r, p, q)` with `E_r^{p,q} ≠ E_{r+1}^{p,q}` for `r ≥ from`.
pub fn degeneration_witness<F: Field>(c: &FilteredComplex<F>, i: usize, from: u32) -> Option<(u32, i32, i32)> {
    let stable = c.stable_stage(i).max(from);
    let einf = c.page(i, stable).total_dim();
    if c.page(i, from).total_dim() == einf {
        return None;
    }
    for r in from..stable {
        let (a, b) = (c.page(i, r).dims(), c.page(i, r + 1).dims());
        for (&(p, q), &d) in &a {
            if b.get(&(p, q)).copied().unwrap_or(0) != d {
                return Some((r, p, q));
            }
        }
    }
    None
}

fn axiom_one<F: Field>(k: &Diagram<F>, mode: Mode) -> Result<AxiomVerdict> {
    let axiom = Axiom::of(mode, 1);
    let last = end_vertex(k)?;
    let ks = k.vertex(last);
    let (wlo, wtop) = w_window(k);
    let mut witnesses = Vec::new();
    match mode {
        Mode::Mhc => {
            for q in wlo - 1..=wtop {
                for (n, p) in strictness_failures(&ks.graded_filtered(W, q)) {
                    witnesses.push(Witness {
                        axiom,
                        degree: n,
                        level: -q,
                        detail: format!("d is not strict for F^{p} on Gr_{}^W", -q),
                    });
                }
            }
        }
        Mode::Ahc => {
            let mut seqs: Vec<(String, FilteredComplex<F>, i32)> =
                vec![("(K_k, W)".into(), k.vertex(0).clone(), 0), ("(K_C, F)".into(), only(ks, 1), 0)];
            for q in wlo - 1..=wtop {
                seqs.push((format!("(Gr_{}^W K_C, F)", -q), ks.graded_filtered(W, q), -q));
            }
            let (flo, ftop) = ks.filtration(1).window();
            for q in flo - 1..=ftop {
                seqs.push((format!("(Gr_F^{q} K_C, W)"), ks.graded_filtered(1, q), q));
            }
            for (name, c, level) in seqs {
                if let Some((r, p, qq)) = degeneration_witness(&c, 0, 1) {
                    witnesses.push(Witness {
                        axiom,
                        degree: p + qq,
                        level,
                        detail: format!("{name}: d_{r} ≠ 0 at E_{r}^({p},{qq})"),
                    });
                }
            }
        }
    }
    Ok(AxiomVerdict { axiom, pass: witnesses.is_empty(), witnesses })
}

fn axiom_two<F: Field>(k: &Diagram<F>, mode: Mode) -> Result<AxiomVerdict> {
    let axiom = Axiom::of(mode, 2);
    let last = end_vertex(k)?;
    let ks = k.vertex(last);
    let (wlo, wtop) = w_window(k);
    let (nlo, nhi) = degrees(k);
    let mut witnesses = Vec::new();
    for q in wlo - 1..=wtop {
        let gf = ks.graded_filtered(W, q);
        for n in nlo..=nhi {
            let Some(t) = graded_transport(k, q, n)? else { continue };
            if !t.is_invertible() {
                continue;
            }
            let p = -q;
            let weight = match mode {
                Mode::Mhc => p + n,
                Mode::Ahc => p,
            };
            let hodge = gf.cohomology_filtration(0, n);
            if !is_pure_hs(&hodge, &t, weight)? {
                witnesses.push(Witness {
                    axiom,
                    degree: n,
                    level: p,
                    detail: format!("H^{n}(Gr_{p}^W) is not pure of weight {weight}"),
                });
            }
        }
    }
    Ok(AxiomVerdict { axiom, pass: witnesses.is_empty(), witnesses })
}

pub fn check<F: Field>(k: &Diagram<F>, mode: Mode) -> Result<HodgeVerdict> {
    end_vertex(k)?;
    Ok(HodgeVerdict { mode, axioms: vec![axiom_zero(k, mode)?, axiom_one(k, mode)?, axiom_two(k, mode)?] })
}

pub fn check_mhc<F: Field>(k: &Diagram<F>) -> Result<HodgeVerdict> {
    check(k, Mode::Mhc)
}

pub fn check_ahc<F: Field>(k: &Diagram<F>) -> Result<HodgeVerdict> {
    check(k, Mode::Ahc)
}

/// `dim E_1 = dim E_∞` for `(K_ℂ, F)` and `dim E_2 = dim E_∞` for `(K_𝐤, W)`.
pub fn degenerates<F: Field>(k: &Diagram<F>) -> Result<(bool, bool)> {
    let last = end_vertex(k)?;
    let f = only(k.vertex(last), 1);
    Ok((degeneration_witness(&f, 0, 1).is_none(), degeneration_witness(k.vertex(0), W, 2).is_none()))
}

pub fn dec_w<F: Field>(k: &Diagram<F>) -> Diagram<F> {
    k.decalage_w()
}

pub fn s_w<F: Field>(k: &Diagram<F>) -> Diagram<F> {
    k.shift_w()
}


use crate::error::{invalid, shape, Result};
use crate::exactla::{Field, Matrix, Restriction};
use crate::filtered::{preserves, FilteredComplex, GradedMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// Filtered by `W`, defined over the base field (rational entries).
    Base,
    /// Filtered by `W`, over the extension field.
    Extended,
    /// Bifiltered by `(W, F)`, over the extension field.
    Bifiltered,
}

impl VertexKind {
    pub fn nfilt(self) -> usize {
        match self {
            VertexKind::Bifiltered => 2,
            _ => 1,
        }
    }

    pub fn restriction(self) -> Restriction {
        match self {
            VertexKind::Base => Restriction::Rational,
            _ => Restriction::Full,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VertexKind::Base => "base",
            VertexKind::Extended => "extended",
            VertexKind::Bifiltered => "bifiltered",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "base" => Some(VertexKind::Base),
            "extended" => Some(VertexKind::Extended),
            "bifiltered" => Some(VertexKind::Bifiltered),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

/// Vertex kinds and arrows of an index category whose arrows all go from a
/// degree-0 vertex to a degree-1 vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagShape {
    kinds: Vec<VertexKind>,
    arrows: Vec<Arrow>,
}

impl ZigzagShape {
    pub fn new(kinds: Vec<VertexKind>, arrows: Vec<Arrow>) -> Result<Self> {
        let n = kinds.len();
        for a in &arrows {
            if a.source >= n || a.target >= n || a.source == a.target {
                return Err(invalid(format!("arrow {} → {} out of range", a.source, a.target)));
            }
        }
        for a in &arrows {
            if arrows.iter().any(|b| b.target == a.source) {
                return Err(invalid(format!("vertex {} is both a source and a target", a.source)));
            }
            let (s, t) = (kinds[a.source], kinds[a.target]);
            if t == VertexKind::Base || t.nfilt() > s.nfilt() {
                return Err(invalid(format!("no comparison from a {} to a {} vertex", s.as_str(), t.as_str())));
            }
        }
        Ok(ZigzagShape { kinds, arrows })
    }

    /// `0 → 1 ← 2 → ⋯ ← s` for even `s ≥ 2`: vertex 0 base, vertex `s`
    /// bifiltered, the others extended.
    pub fn zigzag(s: usize) -> Result<Self> {
        if s == 0 || s % 2 == 1 {
            return Err(invalid(format!("zig-zag length {s} must be even and positive")));
        }
        let kinds = (0..=s)
            .map(|i| match i {
                0 => VertexKind::Base,
                i if i == s => VertexKind::Bifiltered,
                _ => VertexKind::Extended,
            })
            .collect();
        let arrows = (1..s)
            .step_by(2)
            .flat_map(|j| [Arrow { source: j - 1, target: j }, Arrow { source: j + 1, target: j }])
            .collect();
        Self::new(kinds, arrows)
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn kind(&self, i: usize) -> VertexKind {
        self.kinds[i]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, u: usize) -> Arrow {
        self.arrows[u]
    }

    /// 1 for arrow targets, 0 otherwise.
    pub fn degree(&self, i: usize) -> u8 {
        u8::from(self.arrows.iter().any(|a| a.target == i))
    }
}

/// A diagram `X_i --φ_u--> X_j` over a [`ZigzagShape`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram<F> {
    shape: ZigzagShape,
    vertices: Vec<FilteredComplex<F>>,
    comparisons: Vec<GradedMap<F>>,
}

impl<F: Field> Diagram<F> {
    pub fn new(shape: ZigzagShape, vertices: Vec<FilteredComplex<F>>, comparisons: Vec<GradedMap<F>>) -> Result<Self> {
        if vertices.len() != shape.len() || comparisons.len() != shape.arrows().len() {
            return Err(shape_err(&shape, vertices.len(), comparisons.len()));
        }
        for (i, x) in vertices.iter().enumerate() {
            let kind = shape.kind(i);
            if x.nfilt() != kind.nfilt() {
                return Err(invalid(format!("vertex {i} has {} filtrations, expected {}", x.nfilt(), kind.nfilt())));
            }
            if kind == VertexKind::Base && !x.is_rational() {
                return Err(invalid(format!("vertex {i} is not defined over the base field")));
            }
        }
        for (u, (a, phi)) in shape.arrows().iter().zip(&comparisons).enumerate() {
            let (x, y) = (&vertices[a.source], &vertices[a.target]);
            if phi.degree != 0 || &phi.source != x.grading() || &phi.target != y.grading() {
                return Err(shape_msg(format!("comparison {u} does not map vertex {} to vertex {}", a.source, a.target)));
            }
            if !phi.is_chain_map(x.complex(), y.complex()) {
                return Err(invalid(format!("comparison {u} is not a chain map")));
            }
            if !preserves(phi, x, y, &vec![0; y.nfilt()]) {
                return Err(invalid(format!("comparison {u} is not filtered")));
            }
        }
        Ok(Diagram { shape, vertices, comparisons })
    }

    pub fn shape(&self) -> &ZigzagShape {
        &self.shape
    }

    pub fn vertices(&self) -> &[FilteredComplex<F>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &FilteredComplex<F> {
        &self.vertices[i]
    }

    pub fn comparisons(&self) -> &[GradedMap<F>] {
        &self.comparisons
    }

    pub fn comparison(&self, u: usize) -> &GradedMap<F> {
        &self.comparisons[u]
    }

    /// Replaces every vertex by `f(i, X_i)` keeping the comparisons.
    pub fn map_vertices(&self, f: impl Fn(usize, &FilteredComplex<F>) -> FilteredComplex<F>) -> Result<Self> {
        let vertices = self.vertices.iter().enumerate().map(|(i, x)| f(i, x)).collect();
        Diagram::new(self.shape.clone(), vertices, self.comparisons.clone())
    }

    /// Vertexwise décalage of the weight filtration.
    pub fn decalage_w(&self) -> Self {
        self.map_vertices(|_, x| x.decalage(0)).expect("décalage is functorial")
    }

    /// Vertexwise shift of the weight filtration.
    pub fn shift_w(&self) -> Self {
        self.map_vertices(|_, x| x.shift(0)).expect("shift is functorial")
    }

    /// Vertexwise direct sum of diagrams over one shape.
    pub fn direct_sum(parts: &[&Self]) -> Result<Self> {
        let shape = parts[0].shape.clone();
        let vertices: Vec<FilteredComplex<F>> = (0..shape.len())
            .map(|i| FilteredComplex::direct_sum(&parts.iter().map(|d| &d.vertices[i]).collect::<Vec<_>>()))
            .collect();
        let comparisons = shape
            .arrows()
            .iter()
            .enumerate()
            .map(|(u, a)| {
                let (s, t) = (vertices[a.source].grading(), vertices[a.target].grading());
                GradedMap::from_fn(0, s, t, |n| {
                    let bs: Vec<Matrix<F>> = parts.iter().map(|d| d.comparisons[u].at(n).into_owned()).collect();
                    Matrix::block_diag(&bs.iter().collect::<Vec<_>>())
                })
            })
            .collect();
        Diagram::new(shape, vertices, comparisons)
    }

    pub fn is_zero_differential(&self) -> bool {
        self.vertices.iter().all(|x| x.complex().diffs().iter().all(|m| m.is_zero()))
    }
}

fn shape_err(s: &ZigzagShape, nv: usize, na: usize) -> crate::Error {
    shape_msg(format!(
        "shape has {} vertices and {} arrows, got {nv} vertices and {na} comparisons",
        s.len(),
        s.arrows().len()
    ))
}

fn shape_msg(m: String) -> crate::Error {
    shape(m)
}

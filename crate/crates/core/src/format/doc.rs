use std::collections::BTreeMap;
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_err, COMPLEX_V1, DIAGRAM_V1, MHS_V1};
use crate::diagrams::{Arrow, Diagram, PreMorphism, VertexKind, ZigzagShape};
use crate::error::Result;
use crate::exactla::{Field, Matrix, Subspace};
use crate::filtered::{Chain, Complex, Direction, Filtration, FilteredComplex, GradedMap, Grading};
use crate::hodge::MixedHodgeStructure;

/// A matrix entry: a string such as `"-3/2"` or `"1+2*i"`, or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Entry::Int(n) => s.serialize_str(&n.to_string()),
            Entry::Text(t) => s.serialize_str(t),
        }
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Entry;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a scalar string")
            }
            fn visit_i64<E>(self, v: i64) -> std::result::Result<Entry, E> {
                Ok(Entry::Int(v))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Entry, E> {
                i64::try_from(v).map(Entry::Int).map_err(E::custom)
            }
            fn visit_str<E>(self, v: &str) -> std::result::Result<Entry, E> {
                Ok(Entry::Text(v.to_string()))
            }
        }
        d.deserialize_any(V)
    }
}

/// Matrix rows.
pub type Rows = Vec<Vec<Entry>>;
/// Level → degree → generator rows.
pub type Levels = BTreeMap<i32, BTreeMap<i32, Rows>>;
/// Degree → block.
pub type MapDoc = BTreeMap<i32, Rows>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiltrationDoc {
    pub direction: String,
    #[serde(default)]
    pub levels: Levels,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub degrees: BTreeMap<i32, usize>,
    #[serde(default)]
    pub differential: MapDoc,
    /// In file order, which is the filtration order.
    #[serde(default, with = "ordered")]
    pub filtrations: Vec<(String, FiltrationDoc)>,
}

mod ordered {
    use super::*;

    pub fn serialize<S: Serializer, T: Serialize>(v: &[(String, T)], s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(v.len()))?;
        for (k, x) in v {
            m.serialize_entry(k, x)?;
        }
        m.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>, T: Deserialize<'de>>(
        d: D,
    ) -> std::result::Result<Vec<(String, T)>, D::Error> {
        struct V<T>(std::marker::PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = Vec<(String, T)>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map of named filtrations")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = a.next_entry()? {
                    out.push((k, v));
                }
                Ok(out)
            }
        }
        d.deserialize_map(V(std::marker::PhantomData))
    }
}

pub fn encode_matrix<F: Field>(m: &Matrix<F>) -> Rows {
    m.to_rows().iter().map(|r| r.iter().map(|x| Entry::Text(x.format())).collect()).collect()
}

fn entry<F: Field>(e: &Entry, path: &str) -> Result<F> {
    match e {
        Entry::Int(n) => Ok(F::from_int(*n)),
        Entry::Text(t) => F::parse(t).ok_or_else(|| parse_err(path, format!("cannot read {t:?} as a {} scalar", F::NAME))),
    }
}

/// A `rows × cols` matrix; an empty list is the zero matrix of that shape.
pub fn decode_matrix<F: Field>(rows: &Rows, shape: (usize, usize), path: &str) -> Result<Matrix<F>> {
    if rows.is_empty() {
        return Ok(Matrix::zeros(shape.0, shape.1));
    }
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(parse_err(path, format!("expected a {}×{} matrix", shape.0, shape.1)));
    }
    let mut out = Vec::with_capacity(shape.0);
    for (i, r) in rows.iter().enumerate() {
        out.push(r.iter().enumerate().map(|(j, e)| entry(e, &format!("{path}[{i}][{j}]"))).collect::<Result<Vec<F>>>()?);
    }
    Ok(Matrix::from_rows(shape.1, out))
}

fn generators<F: Field>(rows: &Rows, dim: usize, path: &str) -> Result<Subspace<F>> {
    let m = decode_matrix::<F>(rows, (rows.len(), dim), path)?;
    Ok(Subspace::row_space(&m))
}

fn user_level(direction: Direction, internal: i32) -> i32 {
    match direction {
        Direction::Decreasing => internal,
        Direction::Increasing => -internal,
    }
}

/// Jump levels of a chain with the basis of the filtration piece there.
pub fn encode_chain<F: Field>(c: &Chain<F>, direction: Direction) -> BTreeMap<i32, Rows> {
    let mut out = BTreeMap::new();
    if c.dim() == 0 {
        return out;
    }
    for q in c.lo()..c.top() {
        let s = c.get(q);
        if s != c.get(q + 1) {
            out.insert(user_level(direction, q), encode_matrix(&Matrix::from_rows(c.dim(), s.vectors())));
        }
    }
    out
}

/// A piece is spanned by the generators declared at its level and at every
/// later level of the chain (higher for decreasing, lower for increasing);
/// the earliest declared piece must be everything.
pub fn decode_chain<F: Field>(dim: usize, declared: &BTreeMap<i32, Rows>, direction: Direction, path: &str) -> Result<Chain<F>> {
    if dim == 0 {
        return Ok(Chain::trivial(0));
    }
    if declared.is_empty() {
        return Ok(Chain::concentrated(dim, 0));
    }
    let mut internal: Vec<(i32, Subspace<F>)> = declared
        .iter()
        .map(|(&l, rows)| Ok((user_level(direction, l), generators(rows, dim, &format!("{path}.{l}"))?)))
        .collect::<Result<_>>()?;
    internal.sort_by_key(|(q, _)| *q);
    let start = internal[0].0;
    let end = internal.last().expect("nonempty").0;
    let levels: Vec<Subspace<F>> = (start..=end + 1)
        .map(|q| Subspace::sum_all(dim, internal.iter().filter(|(l, _)| *l >= q).map(|(_, s)| s)))
        .collect();
    if !levels[0].is_full() {
        return Err(parse_err(path, "filtration is not exhaustive: the outermost level does not span the space"));
    }
    Ok(Chain::from_levels(dim, start, levels))
}

fn parse_direction(s: &str, path: &str) -> Result<Direction> {
    match s {
        "decreasing" => Ok(Direction::Decreasing),
        "increasing" => Ok(Direction::Increasing),
        other => Err(parse_err(path, format!("unknown direction {other:?}"))),
    }
}

fn grading_of(degrees: &BTreeMap<i32, usize>) -> Grading {
    match (degrees.keys().next(), degrees.keys().next_back()) {
        (Some(&lo), Some(&hi)) => Grading::new(lo, (lo..=hi).map(|n| degrees.get(&n).copied().unwrap_or(0)).collect()),
        _ => Grading::new(0, Vec::new()),
    }
}

pub fn encode_complex<F: Field>(k: &FilteredComplex<F>, header: bool) -> ComplexDoc {
    let c = k.complex();
    let degrees = c.degrees().map(|n| (n, c.dim(n))).collect();
    let differential = c.degrees().filter(|&n| !c.d(n).is_zero()).map(|n| (n, encode_matrix(&c.d(n)))).collect();
    let filtrations = k
        .filtrations()
        .iter()
        .map(|f| {
            let mut levels: Levels = BTreeMap::new();
            for (n, ch) in c.degrees().zip(&f.chains) {
                for (l, rows) in encode_chain(ch, f.direction) {
                    levels.entry(l).or_default().insert(n, rows);
                }
            }
            (f.name.clone(), FiltrationDoc { direction: f.direction.as_str().into(), levels })
        })
        .collect();
    ComplexDoc {
        format: header.then(|| COMPLEX_V1.into()),
        field: header.then(|| F::NAME.into()),
        degrees,
        differential,
        filtrations,
    }
}

pub fn decode_complex<F: Field>(doc: &ComplexDoc, path: &str) -> Result<FilteredComplex<F>> {
    if let Some(f) = &doc.field {
        if f != F::NAME {
            return Err(parse_err(format!("{path}.field"), format!("expected {:?}, found {f:?}", F::NAME)));
        }
    }
    let g = grading_of(&doc.degrees);
    for &n in doc.differential.keys() {
        if !g.degrees().contains(&n) {
            return Err(parse_err(format!("{path}.differential.{n}"), "degree outside the declared range"));
        }
    }
    let diffs = g
        .degrees()
        .map(|n| match doc.differential.get(&n) {
            Some(rows) => decode_matrix(rows, (g.dim(n + 1), g.dim(n)), &format!("{path}.differential.{n}")),
            None => Ok(Matrix::zeros(g.dim(n + 1), g.dim(n))),
        })
        .collect::<Result<Vec<_>>>()?;
    let complex = Complex::new(g.lo, g.dims.clone(), diffs).map_err(|e| parse_err(path, e.to_string()))?;
    let mut filtrations = Vec::new();
    for (name, f) in &doc.filtrations {
        let fp = format!("{path}.filtrations.{name}");
        let direction = parse_direction(&f.direction, &format!("{fp}.direction"))?;
        let chains = g
            .degrees()
            .map(|n| {
                let declared: BTreeMap<i32, Rows> =
                    f.levels.iter().filter_map(|(&l, m)| m.get(&n).map(|r| (l, r.clone()))).collect();
                decode_chain(g.dim(n), &declared, direction, &format!("{fp}.levels[degree {n}]"))
            })
            .collect::<Result<Vec<_>>>()?;
        filtrations.push(Filtration::new(name.clone(), direction, chains));
    }
    FilteredComplex::new(complex, filtrations).map_err(|e| parse_err(path, e.to_string()))
}

/// Nonzero blocks of a graded map.
pub fn encode_map<F: Field>(m: &GradedMap<F>) -> MapDoc {
    m.source.degrees().filter(|&n| !m.at(n).is_zero()).map(|n| (n, encode_matrix(&m.at(n)))).collect()
}

pub fn decode_map<F: Field>(doc: &MapDoc, degree: i32, source: &Grading, target: &Grading, path: &str) -> Result<GradedMap<F>> {
    for &n in doc.keys() {
        if !source.degrees().contains(&n) {
            return Err(parse_err(format!("{path}.{n}"), "degree outside the source range"));
        }
    }
    let blocks = source
        .degrees()
        .map(|n| match doc.get(&n) {
            Some(rows) => decode_matrix(rows, (target.dim(n + degree), source.dim(n)), &format!("{path}.{n}")),
            None => Ok(Matrix::zeros(target.dim(n + degree), source.dim(n))),
        })
        .collect::<Result<Vec<_>>>()?;
    GradedMap::new(degree, source.clone(), target.clone(), blocks).map_err(|e| parse_err(path, e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PreMorphismDoc {
    pub degree: i32,
    pub components: Vec<MapDoc>,
    pub legs: Vec<MapDoc>,
}

pub fn encode_premorphism<F: Field>(f: &PreMorphism<F>) -> PreMorphismDoc {
    PreMorphismDoc {
        degree: f.degree,
        components: f.comps.iter().map(encode_map).collect(),
        legs: f.legs.iter().map(encode_map).collect(),
    }
}

pub fn decode_premorphism<F: Field>(doc: &PreMorphismDoc, x: &Diagram<F>, y: &Diagram<F>, path: &str) -> Result<PreMorphism<F>> {
    let s = x.shape();
    if doc.components.len() != s.len() || doc.legs.len() != s.arrows().len() {
        return Err(parse_err(path, "component or leg count does not match the shape"));
    }
    let comps = doc
        .components
        .iter()
        .enumerate()
        .map(|(i, m)| decode_map(m, doc.degree, x.vertex(i).grading(), y.vertex(i).grading(), &format!("{path}.components[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let legs = doc
        .legs
        .iter()
        .zip(s.arrows())
        .enumerate()
        .map(|(u, (m, a))| {
            let (src, tgt) = (x.vertex(a.source).grading(), y.vertex(a.target).grading());
            decode_map(m, doc.degree - 1, src, tgt, &format!("{path}.legs[{u}]"))
        })
        .collect::<Result<Vec<_>>>()?;
    PreMorphism::new(doc.degree, comps, legs, x, y).map_err(|e| parse_err(path, e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub shape: ShapeDoc,
    pub vertices: Vec<ComplexDoc>,
    pub comparisons: Vec<MapDoc>,
    /// Named ho-morphisms from this diagram to itself.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub homorphisms: BTreeMap<String, PreMorphismDoc>,
}

pub fn encode_diagram<F: Field>(d: &Diagram<F>, header: bool) -> DiagramDoc {
    let s = d.shape();
    DiagramDoc {
        format: header.then(|| DIAGRAM_V1.into()),
        field: header.then(|| F::NAME.into()),
        shape: ShapeDoc {
            vertices: s.kinds().iter().map(|k| k.as_str().into()).collect(),
            arrows: s.arrows().iter().map(|a| [a.source, a.target]).collect(),
        },
        vertices: d.vertices().iter().map(|v| encode_complex(v, false)).collect(),
        comparisons: d.comparisons().iter().map(encode_map).collect(),
        homorphisms: BTreeMap::new(),
    }
}

pub fn decode_diagram<F: Field>(doc: &DiagramDoc, path: &str) -> Result<Diagram<F>> {
    if let Some(f) = &doc.field {
        if f != F::NAME {
            return Err(parse_err(format!("{path}.field"), format!("expected {:?}, found {f:?}", F::NAME)));
        }
    }
    let kinds = doc
        .shape
        .vertices
        .iter()
        .enumerate()
        .map(|(i, k)| {
            VertexKind::parse(k).ok_or_else(|| parse_err(format!("{path}.shape.vertices[{i}]"), format!("unknown vertex kind {k:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let arrows = doc.shape.arrows.iter().map(|&[source, target]| Arrow { source, target }).collect();
    let shape = ZigzagShape::new(kinds, arrows).map_err(|e| parse_err(format!("{path}.shape"), e.to_string()))?;
    let vertices = doc
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| decode_complex::<F>(v, &format!("{path}.vertices[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if vertices.len() != shape.len() || doc.comparisons.len() != shape.arrows().len() {
        return Err(parse_err(path, "vertex or comparison count does not match the shape"));
    }
    let comparisons = doc
        .comparisons
        .iter()
        .zip(shape.arrows())
        .enumerate()
        .map(|(u, (m, a))| {
            decode_map(m, 0, vertices[a.source].grading(), vertices[a.target].grading(), &format!("{path}.comparisons[{u}]"))
        })
        .collect::<Result<Vec<_>>>()?;
    Diagram::new(shape, vertices, comparisons).map_err(|e| parse_err(path, e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MhsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub dim: usize,
    /// `W` on `H_𝐤`, level → generator rows.
    pub rational_weight: BTreeMap<i32, Rows>,
    /// `W` on `H_ℂ`.
    pub weight: BTreeMap<i32, Rows>,
    /// `F` on `H_ℂ`.
    pub hodge: BTreeMap<i32, Rows>,
    /// `H_𝐤 ⊗ ℚ(i) → H_ℂ`; empty means the identity.
    #[serde(default)]
    pub comparison: Rows,
}

pub fn encode_mhs<F: Field>(h: &MixedHodgeStructure<F>) -> MhsDoc {
    MhsDoc {
        format: Some(MHS_V1.into()),
        field: Some(F::NAME.into()),
        dim: h.dim(),
        rational_weight: encode_chain(&h.rational_weight, Direction::Increasing),
        weight: encode_chain(&h.weight, Direction::Increasing),
        hodge: encode_chain(&h.hodge, Direction::Decreasing),
        comparison: encode_matrix(&h.comparison),
    }
}

pub fn decode_mhs<F: Field>(doc: &MhsDoc, path: &str) -> Result<MixedHodgeStructure<F>> {
    let d = doc.dim;
    let rw = decode_chain(d, &doc.rational_weight, Direction::Increasing, &format!("{path}.rational_weight"))?;
    let w = decode_chain(d, &doc.weight, Direction::Increasing, &format!("{path}.weight"))?;
    let f = decode_chain(d, &doc.hodge, Direction::Decreasing, &format!("{path}.hodge"))?;
    let c = if doc.comparison.is_empty() {
        Matrix::identity(d)
    } else {
        decode_matrix(&doc.comparison, (d, d), &format!("{path}.comparison"))?
    };
    MixedHodgeStructure::new(rw, w, f, c).map_err(|e| parse_err(path, e.to_string()))
}

/// A minimal model with the diagram it models.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalDoc {
    pub format: String,
    pub field: String,
    pub input: DiagramDoc,
    pub cohomology: DiagramDoc,
    pub sigma: PreMorphismDoc,
    pub rho: PreMorphismDoc,
    /// Degree −1 homotopy from `σρ` to the identity.
    pub homotopy: PreMorphismDoc,
}

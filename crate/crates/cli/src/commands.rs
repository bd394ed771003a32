use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use hodgeworks::diagrams::Diagram;
use hodgeworks::exactla::Field;
use hodgeworks::filtered::{Direction, FilteredComplex};
use hodgeworks::format::{self, FileKind, Report, Table};
use hodgeworks::hodge::{self, Mode};
use hodgeworks::{random, Gaussian, Rational};

use crate::{ModeArg, Operation};

pub struct Outcome {
    pub report: Report,
    /// Printed instead of the report when present.
    pub artifact: Option<String>,
    pub pass: bool,
}

impl Outcome {
    fn report(report: Report, pass: bool) -> Self {
        Outcome { report, artifact: None, pass }
    }
}

macro_rules! by_field {
    ($field:expr, $f:ident => $body:expr) => {
        match $field.as_str() {
            "rational" => {
                type $f = Rational;
                $body
            }
            "gaussian" => {
                type $f = Gaussian;
                $body
            }
            other => bail!("unknown field {other:?}"),
        }
    };
}

fn read(path: &Path) -> Result<(String, FileKind, String)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (kind, field) = format::sniff(&text).with_context(|| format!("in {}", path.display()))?;
    Ok((text, kind, field))
}

fn expect(kind: FileKind, want: FileKind, path: &Path) -> Result<()> {
    if kind != want {
        bail!("{}: expected a {want:?} file, found {kind:?}", path.display());
    }
    Ok(())
}

fn load_complex<F: Field>(text: &str) -> Result<FilteredComplex<F>> {
    Ok(format::decode_complex(&format::from_json(text, "$")?, "$")?)
}

fn load_diagram<F: Field>(text: &str) -> Result<Diagram<F>> {
    Ok(format::decode_diagram(&format::from_json(text, "$")?, "$")?)
}

fn filtration_index<F: Field>(k: &FilteredComplex<F>, name: Option<&str>) -> Result<usize> {
    match name {
        None if k.nfilt() > 0 => Ok(0),
        None => bail!("the complex has no filtration"),
        Some(n) => k
            .filtrations()
            .iter()
            .position(|f| f.name == n)
            .ok_or_else(|| anyhow!("no filtration named {n:?}")),
    }
}

fn user_level(d: Direction, p: i32) -> i32 {
    match d {
        Direction::Decreasing => p,
        Direction::Increasing => -p,
    }
}

pub fn pages(input: &Path, filtration: Option<&str>, stage: Option<u32>) -> Result<Outcome> {
    let (text, kind, field) = read(input)?;
    expect(kind, FileKind::Complex, input)?;
    by_field!(field, F => pages_in(&load_complex::<F>(&text)?, filtration, stage))
}

fn pages_in<F: Field>(k: &FilteredComplex<F>, filtration: Option<&str>, stage: Option<u32>) -> Result<Outcome> {
    let i = filtration_index(k, filtration)?;
    let dir = k.filtration(i).direction;
    let last = stage.unwrap_or_else(|| k.stable_stage(i));
    let mut report = Report::new("pages");
    let mut t = Table::new(format!("E_r of {}", k.filtration(i).name), &["r", "p", "q", "level", "dim"]);
    for r in 0..=last {
        for ((p, q), d) in k.page(i, r).dims() {
            if d > 0 {
                t.push(vec![json!(r), json!(p), json!(q), json!(user_level(dir, p)), json!(d)]);
            }
        }
    }
    let einf = k.page_infinity(i).dims().into_iter().filter(|(_, d)| *d > 0).collect::<std::collections::BTreeMap<_, _>>();
    let gr = k.cohomology_graded_dims(i);
    let mut cmp = Table::new("E_∞ against Gr H", &["p", "q", "E_∞", "Gr H"]);
    let keys: std::collections::BTreeSet<_> = einf.keys().chain(gr.keys()).copied().collect();
    for (p, q) in keys {
        let (a, b) = (einf.get(&(p, q)).copied().unwrap_or(0), gr.get(&(p, q)).copied().unwrap_or(0));
        cmp.push(vec![json!(p), json!(q), json!(a), json!(b)]);
    }
    let pass = einf == gr;
    report.pass = Some(pass);
    report.tables = vec![t, cmp];
    Ok(Outcome::report(report, pass))
}

fn transform<F: Field>(k: &FilteredComplex<F>, i: usize, op: Operation) -> FilteredComplex<F> {
    match op {
        Operation::Dec => k.decalage(i),
        Operation::DecDual => k.dual_decalage(i),
        Operation::Shift => k.shift(i),
    }
}

pub fn decalage(input: &Path, filtration: Option<&str>, op: Operation, output: Option<&Path>) -> Result<Outcome> {
    let (text, kind, field) = read(input)?;
    let out = by_field!(field, F => match kind {
        FileKind::Complex => {
            let k = load_complex::<F>(&text)?;
            let i = filtration_index(&k, filtration)?;
            format::to_json(&format::encode_complex(&transform(&k, i, op), true))
        }
        FileKind::Diagram => {
            let d = load_diagram::<F>(&text)?;
            let name = filtration.unwrap_or("W");
            let t = d.map_vertices(|_, x| match x.filtrations().iter().position(|f| f.name == name) {
                Some(i) => transform(x, i, op),
                None => x.clone(),
            })?;
            format::to_json(&format::encode_diagram(&t, true))
        }
        other => bail!("{}: cannot take the décalage of a {other:?} file", input.display()),
    });
    write_artifact("decalage", out, output)
}

fn write_artifact(command: &str, text: String, output: Option<&Path>) -> Result<Outcome> {
    match output {
        None => Ok(Outcome { report: Report::new(command), artifact: Some(text), pass: true }),
        Some(p) => {
            fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            let mut report = Report::new(command);
            report.pass = Some(true);
            report.data = Some(json!({ "written": p.display().to_string() }));
            Ok(Outcome::report(report, true))
        }
    }
}

fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Mhc => Mode::Mhc,
        ModeArg::Ahc => Mode::Ahc,
    }
}

pub fn check(input: &Path, m: ModeArg) -> Result<Outcome> {
    let (text, kind, field) = read(input)?;
    expect(kind, FileKind::Diagram, input)?;
    let v = by_field!(field, F => hodge::check(&load_diagram::<F>(&text)?, mode(m))?);
    let mut report = Report::new(&format!("check {}", mode(m).as_str()));
    report.pass = Some(v.pass());
    report.verdicts = format::verdict_doc(&v);
    Ok(Outcome::report(report, v.pass()))
}

fn load_mhs<F: Field>(path: &Path) -> Result<hodge::MixedHodgeStructure<F>> {
    let (text, kind, _) = read(path)?;
    expect(kind, FileKind::Mhs, path)?;
    let h = format::decode_mhs(&format::from_json(&text, "$")?, "$")?;
    if !h.is_mhs() {
        bail!("{}: not a mixed Hodge structure", path.display());
    }
    Ok(h)
}

pub fn ext(source: &Path, target: &Path, n: u32) -> Result<Outcome> {
    let (_, _, field) = read(source)?;
    let (dim, reps) = by_field!(field, F => {
        let e = hodge::ext(&load_mhs::<F>(source)?, &load_mhs::<F>(target)?, n);
        (e.dim, e.representatives.iter().map(|m| serde_json::to_value(format::encode_matrix(m)).expect("json")).collect::<Vec<Value>>())
    });
    let mut report = Report::new("ext");
    let mut t = Table::new("Ext", &["n", "dim"]);
    t.push(vec![json!(n), json!(dim)]);
    report.pass = Some(true);
    report.tables = vec![t];
    report.data = Some(json!({ "n": n, "dim": dim, "representatives": reps }));
    Ok(Outcome::report(report, true))
}

fn load_ahc<F: Field>(path: &Path) -> Result<Diagram<F>> {
    let (text, kind, _) = read(path)?;
    expect(kind, FileKind::Diagram, path)?;
    let d = load_diagram::<F>(&text)?;
    let v = hodge::check_ahc(&d)?;
    if !v.pass() {
        bail!("{}: not an absolute Hodge complex (fails {:?})", path.display(), v.failing());
    }
    Ok(d)
}

pub fn homset(source: &Path, target: &Path) -> Result<Outcome> {
    let (_, _, field) = read(source)?;
    let h = by_field!(field, F => hodge::homset(&load_ahc::<F>(source)?, &load_ahc::<F>(target)?)?);
    let mut t = Table::new("Ho(K, L) = ⊕ Hom(H^n K, H^n L) ⊕ Ext¹(H^n K, H^{n-1} L)", &["n", "Hom", "Ext1"]);
    for s in &h.summands {
        t.push(vec![json!(s.degree), json!(s.hom), json!(s.ext1)]);
    }
    t.push(vec![json!("total"), json!(h.formula()), json!("")]);
    t.push(vec![json!("direct"), json!(h.direct), json!("")]);
    let mut report = Report::new("homset");
    report.pass = Some(h.agrees());
    report.tables = vec![t];
    report.data = Some(json!({ "total": h.formula(), "direct": h.direct }));
    Ok(Outcome::report(report, h.agrees()))
}

fn bundle<F: Field>(k: &Diagram<F>) -> Result<format::MinimalDoc> {
    let m = hodge::minimal_model(k)?;
    Ok(format::MinimalDoc {
        format: format::MINIMAL_V1.into(),
        field: F::NAME.into(),
        input: format::encode_diagram(k, false),
        cohomology: format::encode_diagram(&m.h, false),
        sigma: format::encode_premorphism(&m.sigma),
        rho: format::encode_premorphism(&m.rho),
        homotopy: format::encode_premorphism(&m.homotopy.h),
    })
}

pub fn minimal(input: &Path, output: Option<&Path>) -> Result<Outcome> {
    let (_, _, field) = read(input)?;
    let text = by_field!(field, F => format::to_json(&bundle(&load_ahc::<F>(input)?)?));
    write_artifact("minimal", text, output)
}

/// Replays a minimal model bundle.
fn replay<F: Field>(doc: &format::MinimalDoc) -> Result<bool> {
    let k: Diagram<F> = format::decode_diagram(&doc.input, "$.input")?;
    let h: Diagram<F> = format::decode_diagram(&doc.cohomology, "$.cohomology")?;
    let sigma = format::decode_premorphism(&doc.sigma, &h, &k, "$.sigma")?;
    let rho = format::decode_premorphism(&doc.rho, &k, &h, "$.rho")?;
    let hh = format::decode_premorphism(&doc.homotopy, &k, &k, "$.homotopy")?;
    let f = sigma.compose(&rho, k.shape());
    let g = hodgeworks::diagrams::PreMorphism::identity(&k);
    let m = hodge::MinimalModel { h: h.clone(), sigma, rho, homotopy: hodgeworks::diagrams::HoHomotopy::new(f, g, hh, 0) };
    Ok(hodge::check_ahc(&k)?.pass() && hodge::cohomology_diagram(&k)? == h && m.verify(&k)?)
}

fn verify_text(text: &str) -> Result<(FileKind, bool)> {
    let (kind, field) = format::sniff(text)?;
    let ok = by_field!(field, F => match kind {
        FileKind::Complex => load_complex::<F>(text).map(|_| true)?,
        FileKind::Diagram => load_diagram::<F>(text).map(|_| true)?,
        FileKind::Mhs => format::decode_mhs::<F>(&format::from_json(text, "$")?, "$")?.is_mhs(),
        FileKind::Minimal => replay::<F>(&format::from_json(text, "$")?)?,
        FileKind::Report => format::from_json::<Report>(text, "$").map(|_| true)?,
    });
    Ok((kind, ok))
}

pub fn verify(inputs: &[std::path::PathBuf], seed: Option<u64>, count: usize, emit: Option<&Path>) -> Result<Outcome> {
    let mut report = Report::new("verify");
    let mut pass = true;
    let mut t = Table::new("files", &["file", "kind", "status"]);
    for p in inputs {
        let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        let (kind, status) = match verify_text(&text) {
            Ok((k, true)) => (format!("{k:?}"), "ok".to_string()),
            Ok((k, false)) => (format!("{k:?}"), "FAIL".to_string()),
            Err(e) => ("?".into(), format!("invalid: {e:#}")),
        };
        pass &= status == "ok";
        t.push(vec![json!(p.display().to_string()), json!(kind), json!(status)]);
    }
    if !inputs.is_empty() {
        report.tables.push(t);
    }
    if let Some(seed) = seed {
        let (table, ok) = corpus(seed, count, emit)?;
        pass &= ok;
        report.tables.push(table);
    }
    report.pass = Some(pass);
    Ok(Outcome::report(report, pass))
}

/// Generated instances: shift/décalage round trips through files, and
/// minimal models of random absolute Hodge complexes replayed from files.
fn corpus(seed: u64, count: usize, emit: Option<&Path>) -> Result<(Table, bool)> {
    if let Some(dir) = emit {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut rng = random::rng(seed);
    let mut t = Table::new(format!("corpus (seed {seed})"), &["instance", "round trip", "ahc", "minimal"]);
    let mut all = true;
    for i in 0..count {
        let k = random::filtered_complex::<Rational>(&mut rng, Default::default(), true);
        let canon = format::to_json(&format::encode_complex(&k, true));
        let shifted = format::to_json(&format::encode_complex(&k.shift(0), true));
        let back = load_complex::<Rational>(&shifted)?.decalage(0);
        let round = format::to_json(&format::encode_complex(&back, true)) == canon;

        let d = random::ahc::<Gaussian>(&mut rng, 3, 2);
        let ahc = hodge::check_ahc(&d)?.pass();
        let text = format::to_json(&bundle(&d)?);
        let (_, replayed) = verify_text(&text)?;
        if let Some(dir) = emit {
            fs::write(dir.join(format!("complex-{i:03}.json")), &canon)?;
            fs::write(dir.join(format!("ahc-{i:03}.json")), format::to_json(&format::encode_diagram(&d, true)))?;
            fs::write(dir.join(format!("minimal-{i:03}.json")), &text)?;
        }
        all &= round && ahc && replayed;
        let s = |b: bool| if b { "ok" } else { "FAIL" };
        t.push(vec![json!(i), json!(s(round)), json!(s(ahc)), json!(s(replayed))]);
    }
    Ok((t, all))
}

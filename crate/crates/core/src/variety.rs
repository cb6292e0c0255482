//! Generators `Ca_2, Ca_4, …` of the isochronous variety of degree `d`.
//!
//! Each generator is the correction term of the fully symbolic Hamiltonian
//! field `X_lin + X_2 + … + X_d`, rewritten over the independent
//! coordinates of the chosen chart. The stabilization index of the ideal
//! chain is not computed; the caller picks the depth bound.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::{BigRat, GaussRat};
use crate::constraints::{central_variable, Chart, FieldSpec};
use crate::correction::{correction_term_with, Composition, CorrectionOptions};
use crate::error::{Error, Result};
use crate::poly::{CoeffVar, Monomial, SymPoly, VarKind};

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    pub degree: u32,
    pub max_depth: u32,
    pub chart: Chart,
    /// Word composition order the generators were computed with.
    pub composition: Composition,
    /// Independent coordinates the generators are written over.
    pub coordinates: Vec<CoeffVar>,
    /// `(2p, Ca_{2p})` for `2p = 2, 4, …, max_depth`.
    pub generators: Vec<(u32, SymPoly)>,
}

fn symbolic_field(d: u32, chart: Chart) -> FieldSpec {
    FieldSpec::symbolic(2..=d, true, chart)
}

/// Generators in the default (lower) chart.
pub fn generators(d: u32, max_depth: u32) -> Result<GeneratorSet> {
    generators_in(d, max_depth, Chart::Lower)
}

pub fn generators_in(d: u32, max_depth: u32, chart: Chart) -> Result<GeneratorSet> {
    generators_with(d, max_depth, chart, Composition::default())
}

pub fn generators_with(
    d: u32,
    max_depth: u32,
    chart: Chart,
    composition: Composition,
) -> Result<GeneratorSet> {
    if d < 2 {
        return Err(crate::error::ConstraintError::ComponentTooSmall(d).into());
    }
    if max_depth % 2 == 1 {
        return Err(Error::Document(format!(
            "max depth must be even, got {max_depth}"
        )));
    }
    let spec = symbolic_field(d, chart);
    let opts = CorrectionOptions {
        composition,
        ..Default::default()
    };
    let mut gens = Vec::new();
    for depth in (2..=max_depth).step_by(2) {
        gens.push((depth, correction_term_with(&spec, depth, &opts)?.total));
    }
    Ok(GeneratorSet {
        degree: d,
        max_depth,
        chart,
        composition,
        coordinates: spec.coordinates(),
        generators: gens,
    })
}

/// True iff every generator is concentrated in weight grade 0.
pub fn grading_check(gs: &GeneratorSet) -> bool {
    gs.generators
        .iter()
        .all(|(_, g)| g.weight_grade().keys().all(|w| *w == 0))
}

const TEXT_HEADER: &str = "# isochronous variety generators";

fn coords_line(coords: &[CoeffVar]) -> String {
    coords
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// One generator per line in polynomial syntax after a short header.
pub fn to_text(gs: &GeneratorSet) -> String {
    let mut out = String::new();
    writeln!(out, "{TEXT_HEADER}").unwrap();
    writeln!(out, "degree: {}", gs.degree).unwrap();
    writeln!(out, "max-depth: {}", gs.max_depth).unwrap();
    writeln!(out, "chart: {}", gs.chart).unwrap();
    writeln!(out, "composition: {}", gs.composition).unwrap();
    writeln!(out, "coordinates: {}", coords_line(&gs.coordinates)).unwrap();
    for (depth, g) in &gs.generators {
        writeln!(out, "generator {depth}: {g}").unwrap();
    }
    out
}

fn doc_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Document(format!("line {line}: {msg}"))
}

/// Parses the output of [`to_text`].
pub fn from_text(text: &str) -> Result<GeneratorSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, l)) if l == TEXT_HEADER => {}
        Some((n, l)) => return Err(doc_err(n, format!("unexpected header {l:?}"))),
        None => return Err(Error::Document("empty document".into())),
    }
    let mut field = |key: &str| -> Result<(usize, String)> {
        let (n, l) = lines
            .next()
            .ok_or_else(|| Error::Document(format!("missing {key}")))?;
        let rest = l.strip_prefix(key).and_then(|r| r.strip_prefix(':'));
        rest.map(|r| (n, r.trim().to_string()))
            .ok_or_else(|| doc_err(n, format!("expected {key}")))
    };
    let (n, v) = field("degree")?;
    let degree = v.parse().map_err(|e| doc_err(n, e))?;
    let (n, v) = field("max-depth")?;
    let max_depth = v.parse().map_err(|e| doc_err(n, e))?;
    let (n, v) = field("chart")?;
    let chart = v.parse().map_err(|e: String| doc_err(n, e))?;
    let (n, v) = field("composition")?;
    let composition = v.parse().map_err(|e: String| doc_err(n, e))?;
    let (n, v) = field("coordinates")?;
    let coordinates = v
        .split_whitespace()
        .map(|t| t.parse::<CoeffVar>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| doc_err(n, e))?;
    let mut generators = Vec::new();
    for (n, l) in lines {
        let rest = l
            .strip_prefix("generator ")
            .ok_or_else(|| doc_err(n, "expected a generator line"))?;
        let (d, p) = rest
            .split_once(':')
            .ok_or_else(|| doc_err(n, "missing ':'"))?;
        let depth = d.trim().parse().map_err(|e| doc_err(n, e))?;
        let poly = p.trim().parse::<SymPoly>().map_err(|e| doc_err(n, e))?;
        generators.push((depth, poly));
    }
    Ok(GeneratorSet {
        degree,
        max_depth,
        chart,
        composition,
        coordinates,
        generators,
    })
}

// Structured form: exact rationals as `[numerator, denominator]` integer
// pairs of unbounded size.

#[derive(Serialize, Deserialize)]
struct DocVar {
    kind: String,
    a: i32,
    b: i32,
    conj: bool,
}

#[derive(Serialize, Deserialize)]
struct DocRat(serde_json::Number, serde_json::Number);

#[derive(Serialize, Deserialize)]
struct DocCoeff {
    re: DocRat,
    im: DocRat,
}

#[derive(Serialize, Deserialize)]
struct DocFactor {
    var: DocVar,
    exp: u32,
}

#[derive(Serialize, Deserialize)]
struct DocTerm {
    coefficient: DocCoeff,
    factors: Vec<DocFactor>,
}

#[derive(Serialize, Deserialize)]
struct DocGenerator {
    depth: u32,
    terms: Vec<DocTerm>,
}

#[derive(Serialize, Deserialize)]
struct Document {
    degree: u32,
    max_depth: u32,
    chart: String,
    composition: String,
    coordinates: Vec<DocVar>,
    generators: Vec<DocGenerator>,
}

fn doc_var(v: &CoeffVar) -> DocVar {
    let kind = match v.kind {
        VarKind::P => "p",
        VarKind::Q => "q",
    };
    DocVar {
        kind: kind.into(),
        a: v.a,
        b: v.b,
        conj: v.conj,
    }
}

fn from_doc_var(d: &DocVar) -> Result<CoeffVar> {
    let base = match d.kind.as_str() {
        "p" => CoeffVar::p(d.a, d.b),
        "q" => CoeffVar::q(d.a, d.b),
        k => return Err(Error::Document(format!("unknown variable kind {k:?}"))),
    };
    Ok(if d.conj { base.conjugate() } else { base })
}

fn number(s: String) -> serde_json::Number {
    s.parse().expect("decimal integers are valid JSON numbers")
}

fn doc_rat(q: &BigRat) -> DocRat {
    DocRat(number(q.numer().to_string()), number(q.denom().to_string()))
}

fn from_doc_rat(d: &DocRat) -> Result<BigRat> {
    let parse = |n: &serde_json::Number| {
        n.to_string()
            .parse::<num_bigint::BigInt>()
            .map_err(|e| Error::Document(format!("not an integer: {n} ({e})")))
    };
    let den = parse(&d.1)?;
    if den == num_bigint::BigInt::from(0) {
        return Err(Error::Document("zero denominator".into()));
    }
    Ok(BigRat::new(parse(&d.0)?, den))
}

/// Machine-readable JSON document.
pub fn to_structured(gs: &GeneratorSet) -> String {
    let doc = Document {
        degree: gs.degree,
        max_depth: gs.max_depth,
        chart: gs.chart.to_string(),
        composition: gs.composition.to_string(),
        coordinates: gs.coordinates.iter().map(doc_var).collect(),
        generators: gs
            .generators
            .iter()
            .map(|(depth, g)| DocGenerator {
                depth: *depth,
                terms: g
                    .terms()
                    .map(|(m, c)| DocTerm {
                        coefficient: DocCoeff {
                            re: doc_rat(c.re()),
                            im: doc_rat(c.im()),
                        },
                        factors: m
                            .factors()
                            .iter()
                            .map(|(v, e)| DocFactor {
                                var: doc_var(v),
                                exp: *e,
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
    s.push('\n');
    s
}

/// Parses the output of [`to_structured`].
pub fn from_structured(text: &str) -> Result<GeneratorSet> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    let chart = doc.chart.parse().map_err(Error::Document)?;
    let composition = doc.composition.parse().map_err(Error::Document)?;
    let coordinates = doc
        .coordinates
        .iter()
        .map(from_doc_var)
        .collect::<Result<_>>()?;
    let mut generators = Vec::new();
    for g in &doc.generators {
        let mut poly = SymPoly::zero();
        for t in &g.terms {
            let factors = t
                .factors
                .iter()
                .map(|f| Ok((from_doc_var(&f.var)?, f.exp)))
                .collect::<Result<Vec<_>>>()?;
            let c = GaussRat::new(
                from_doc_rat(&t.coefficient.re)?,
                from_doc_rat(&t.coefficient.im)?,
            );
            poly.add_term(Monomial::from_factors(factors), c);
        }
        generators.push((g.depth, poly));
    }
    Ok(GeneratorSet {
        degree: doc.degree,
        max_depth: doc.max_depth,
        chart,
        composition,
        coordinates,
        generators,
    })
}

/// Real coordinate: real or imaginary part of an independent coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Part {
    Re,
    Im,
}

type RealMono = Vec<((CoeffVar, Part), u32)>;

/// Polynomial over real coordinates with Gaussian coefficients.
#[derive(Default)]
struct RealPoly(BTreeMap<RealMono, GaussRat>);

impl RealPoly {
    fn one() -> Self {
        RealPoly(BTreeMap::from([(Vec::new(), GaussRat::one())]))
    }

    fn linear(terms: &[((CoeffVar, Part), GaussRat)]) -> Self {
        RealPoly(
            terms
                .iter()
                .map(|(v, c)| (vec![(*v, 1)], c.clone()))
                .collect(),
        )
    }

    fn mul(&self, other: &RealPoly) -> RealPoly {
        let mut out: BTreeMap<RealMono, GaussRat> = BTreeMap::new();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                let mut merged: BTreeMap<(CoeffVar, Part), u32> = m1.iter().cloned().collect();
                for (v, e) in m2 {
                    *merged.entry(*v).or_default() += e;
                }
                let entry = out
                    .entry(merged.into_iter().collect())
                    .or_insert_with(GaussRat::zero);
                *entry += &(c1 * c2);
            }
        }
        out.retain(|_, c| !c.is_zero());
        RealPoly(out)
    }

    fn add_assign(&mut self, other: RealPoly) {
        for (m, c) in other.0 {
            let entry = self.0.entry(m).or_insert_with(GaussRat::zero);
            *entry += &c;
        }
        self.0.retain(|_, c| !c.is_zero());
    }

    /// Real and imaginary parts as rational polynomials.
    fn render_part(&self, pick: impl Fn(&GaussRat) -> BigRat) -> String {
        let terms: Vec<String> = self
            .0
            .iter()
            .filter_map(|(m, c)| {
                let q = pick(c);
                if q == BigRat::from_integer(0.into()) {
                    return None;
                }
                let mut s = format!("({q})");
                for ((v, part), e) in m {
                    let name = match part {
                        Part::Re => "re",
                        Part::Im => "im",
                    };
                    write!(s, "*{name}({})", v.plain()).unwrap();
                    if *e > 1 {
                        write!(s, "^{e}").unwrap();
                    }
                }
                Some(s)
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// `v = re(v) + i·im(v)`; central coordinates are purely imaginary.
fn split_var(v: &CoeffVar) -> RealPoly {
    let plain = v.plain();
    let sign = if v.conj { -1 } else { 1 };
    let im = GaussRat::imag(crate::arith::rat(sign, 1));
    let is_central = central_variable(v.degree() as u32) == Some(plain);
    if is_central {
        RealPoly::linear(&[((plain, Part::Im), im)])
    } else {
        RealPoly::linear(&[
            ((plain, Part::Re), GaussRat::one()),
            ((plain, Part::Im), im),
        ])
    }
}

fn split_poly(p: &SymPoly) -> RealPoly {
    let mut out = RealPoly::default();
    for (m, c) in p.terms() {
        let mut t = RealPoly::one();
        for (v, e) in m.factors() {
            let s = split_var(v);
            for _ in 0..*e {
                t = t.mul(&s);
            }
        }
        let scaled = RealPoly(t.0.into_iter().map(|(k, x)| (k, &x * c)).collect());
        out.add_assign(scaled);
    }
    out
}

/// Text export over real coordinates: each generator yields the two real
/// equations `Re Ca = 0` and `Im Ca = 0`. Central coordinates contribute
/// only their imaginary part. This form is write-only.
pub fn to_text_real(gs: &GeneratorSet) -> String {
    let mut out = String::new();
    writeln!(out, "{TEXT_HEADER} (real coordinates)").unwrap();
    writeln!(out, "degree: {}", gs.degree).unwrap();
    writeln!(out, "max-depth: {}", gs.max_depth).unwrap();
    writeln!(out, "chart: {}", gs.chart).unwrap();
    writeln!(out, "composition: {}", gs.composition).unwrap();
    let mut coords = Vec::new();
    for v in &gs.coordinates {
        if central_variable(v.degree() as u32) != Some(*v) {
            coords.push(format!("re({v})"));
        }
        coords.push(format!("im({v})"));
    }
    writeln!(out, "coordinates: {}", coords.join(" ")).unwrap();
    for (depth, g) in &gs.generators {
        let r = split_poly(g);
        writeln!(
            out,
            "generator {depth} re: {}",
            r.render_part(|c| c.re().clone())
        )
        .unwrap();
        writeln!(
            out,
            "generator {depth} im: {}",
            r.render_part(|c| c.im().clone())
        )
        .unwrap();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Text,
    Structured,
}

pub fn export(gs: &GeneratorSet, format: ExportFormat, real: bool) -> Result<String> {
    match (format, real) {
        (ExportFormat::Text, false) => Ok(to_text(gs)),
        (ExportFormat::Text, true) => Ok(to_text_real(gs)),
        (ExportFormat::Structured, false) => Ok(to_structured(gs)),
        (ExportFormat::Structured, true) => Err(Error::Document(
            "real splitting is only offered for the text format".into(),
        )),
    }
}

pub fn export_to_file(
    gs: &GeneratorSet,
    format: ExportFormat,
    real: bool,
    path: &Path,
) -> Result<()> {
    std::fs::write(path, export(gs, format, real)?)?;
    Ok(())
}

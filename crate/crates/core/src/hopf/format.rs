//! Plain-text definition documents.
//!
//! ```text
//! # comment
//! name C(Z2)
//! dim 2
//! basis d_0 d_1
//! meta origin function-algebra
//! [MULT]          i j k re im    coefficient of b_k in b_i b_j
//! [UNIT]          i re im
//! [STAR]          i j re im      coefficient of b_j in b_i*
//! [COPRODUCT]     k i j re im    coefficient of b_i ⊗ b_j in Δ(b_k)
//! [COUNIT]        i re im
//! [ANTIPODE]      i j re im      coefficient of b_j in S(b_i)
//! [HAAR]          i re im        optional; solved for when absent
//! ```
//!
//! Indices are 0-based, entries not listed are zero, every section other than
//! `HAAR` must be present (possibly empty) and unknown sections are rejected.
//! Values are written with shortest round-trip formatting, so
//! `parse(write(g))` reproduces every coefficient bit for bit.

use std::fmt::Write as _;

use super::{verify_axioms, FiniteQuantumGroup, StructureData};
use crate::error::{Error, Result};
use crate::linalg::{Tolerance, C64, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Mult,
    Unit,
    Star,
    Coproduct,
    Counit,
    Antipode,
    Haar,
}

impl Section {
    const ALL: [Section; 7] = [
        Section::Mult,
        Section::Unit,
        Section::Star,
        Section::Coproduct,
        Section::Counit,
        Section::Antipode,
        Section::Haar,
    ];

    fn tag(self) -> &'static str {
        match self {
            Section::Mult => "MULT",
            Section::Unit => "UNIT",
            Section::Star => "STAR",
            Section::Coproduct => "COPRODUCT",
            Section::Counit => "COUNIT",
            Section::Antipode => "ANTIPODE",
            Section::Haar => "HAAR",
        }
    }

    fn arity(self) -> usize {
        match self {
            Section::Mult | Section::Coproduct => 3,
            Section::Star | Section::Antipode => 2,
            _ => 1,
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses a document into raw structure data without checking any axiom.
pub fn parse_definition(text: &str) -> Result<StructureData> {
    let mut name = None;
    let mut dim: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut meta = Vec::new();
    let mut current: Option<Section> = None;
    let mut tensors: [Option<Vec<C64>>; 7] = Default::default();
    let mut seen: [Vec<bool>; 7] = Default::default();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(tag) = line.strip_prefix('[') {
            let tag = tag
                .strip_suffix(']')
                .ok_or_else(|| perr(line_no, "unterminated section header"))?
                .trim();
            let section = Section::ALL
                .into_iter()
                .find(|s| s.tag() == tag)
                .ok_or_else(|| perr(line_no, format!("unknown section [{tag}]")))?;
            let d = dim.ok_or_else(|| perr(line_no, "section before dim"))?;
            let slot = section as usize;
            if tensors[slot].is_some() {
                return Err(perr(line_no, format!("duplicate section [{tag}]")));
            }
            let len = d.pow(section.arity() as u32);
            tensors[slot] = Some(vec![ZERO; len]);
            seen[slot] = vec![false; len];
            current = Some(section);
            continue;
        }
        let mut words = line.split_whitespace();
        let Some(section) = current else {
            let key = words.next().unwrap_or_default();
            let rest = line[key.len()..].trim();
            match key {
                "name" => name = Some(rest.to_string()),
                "dim" => {
                    let d: usize = rest
                        .parse()
                        .map_err(|_| perr(line_no, format!("bad dim {rest:?}")))?;
                    if d == 0 {
                        return Err(perr(line_no, "dim must be positive"));
                    }
                    dim = Some(d);
                }
                "basis" => labels = Some(words.map(str::to_string).collect()),
                "meta" => {
                    let k = words
                        .next()
                        .ok_or_else(|| perr(line_no, "meta without key"))?;
                    let v = rest[k.len()..].trim();
                    meta.push((k.to_string(), v.to_string()));
                }
                other => return Err(perr(line_no, format!("unknown header key {other:?}"))),
            }
            continue;
        };
        let d = dim.expect("section implies dim");
        let fields: Vec<&str> = words.collect();
        let arity = section.arity();
        if fields.len() != arity + 2 {
            return Err(perr(
                line_no,
                format!(
                    "[{}] entries need {} indices and re im, found {} fields",
                    section.tag(),
                    arity,
                    fields.len()
                ),
            ));
        }
        let mut flat = 0usize;
        for f in &fields[..arity] {
            let i: usize = f
                .parse()
                .map_err(|_| perr(line_no, format!("bad index {f:?}")))?;
            if i >= d {
                return Err(perr(line_no, format!("index {i} out of range for dim {d}")));
            }
            flat = flat * d + i;
        }
        let num = |s: &str| -> Result<f64> {
            let v: f64 = s
                .parse()
                .map_err(|_| perr(line_no, format!("bad number {s:?}")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(perr(line_no, format!("non-finite number {s:?}")))
            }
        };
        let value = C64::new(num(fields[arity])?, num(fields[arity + 1])?);
        let slot = section as usize;
        if std::mem::replace(&mut seen[slot][flat], true) {
            return Err(perr(line_no, "duplicate entry"));
        }
        tensors[slot].as_mut().unwrap()[flat] = value;
    }

    let d = dim.ok_or_else(|| perr(0, "missing dim"))?;
    let labels = labels.ok_or_else(|| perr(0, "missing basis"))?;
    if labels.len() != d {
        return Err(Error::malformed(
            "basis",
            format!("{} labels for dim {d}", labels.len()),
        ));
    }
    let [mult, unit, star, coproduct, counit, antipode, haar] = tensors;
    let require = |t: Option<Vec<C64>>, s: Section| {
        t.ok_or_else(|| Error::malformed(s.tag(), "section missing"))
    };
    Ok(StructureData {
        name: name.unwrap_or_default(),
        labels,
        mult: require(mult, Section::Mult)?,
        unit: require(unit, Section::Unit)?,
        star: require(star, Section::Star)?,
        coproduct: require(coproduct, Section::Coproduct)?,
        counit: require(counit, Section::Counit)?,
        antipode: require(antipode, Section::Antipode)?,
        haar,
        meta,
    })
}

/// Parses a document and requires every axiom to pass.
pub fn load_definition(text: &str, tol: &Tolerance) -> Result<FiniteQuantumGroup> {
    let g = FiniteQuantumGroup::from_parts(parse_definition(text)?)?;
    let report = verify_axioms(&g, tol);
    if !report.passed() {
        return Err(Error::AxiomFailure(Box::new(report)));
    }
    Ok(g)
}

fn write_entries(out: &mut String, d: usize, arity: usize, values: &[C64]) {
    for (flat, v) in values.iter().enumerate() {
        if *v == ZERO {
            continue;
        }
        let mut idx = Vec::with_capacity(arity);
        let mut r = flat;
        for _ in 0..arity {
            idx.push(r % d);
            r /= d;
        }
        idx.reverse();
        for i in idx {
            let _ = write!(out, "{i} ");
        }
        let _ = writeln!(out, "{} {}", v.re, v.im);
    }
}

/// Serializes a quantum group. A derived Haar state is written out too, so
/// the document is self-contained.
pub fn write_definition(g: &FiniteQuantumGroup) -> String {
    let d = g.dim();
    let parts = g.to_parts();
    let mut out = String::new();
    if !g.name().is_empty() {
        let _ = writeln!(out, "name {}", g.name());
    }
    let _ = writeln!(out, "dim {d}");
    let _ = writeln!(out, "basis {}", g.labels().join(" "));
    for (k, v) in g.meta() {
        let _ = writeln!(out, "meta {k} {v}");
    }
    let sections: [(Section, &[C64]); 7] = [
        (Section::Mult, &parts.mult),
        (Section::Unit, &parts.unit),
        (Section::Star, &parts.star),
        (Section::Coproduct, &parts.coproduct),
        (Section::Counit, &parts.counit),
        (Section::Antipode, &parts.antipode),
        (Section::Haar, g.haar_vec()),
    ];
    for (s, values) in sections {
        let _ = writeln!(out, "[{}]", s.tag());
        write_entries(&mut out, d, s.arity(), values);
    }
    out
}

//! Derives the 8-dimensional Kac–Paljutkin quantum group from its
//! presentation and writes it as a definition document.
//!
//! Generators x, y, z with
//!   x² = y² = 1, xy = yx, zx = yz, zy = xz, z² = ½(1 + x + y − xy),
//!   Δx = x⊗x, Δy = y⊗y, Δz = ½(1⊗1 + 1⊗x + y⊗1 − y⊗x)(z⊗z),
//!   ε = 1 and S = id on generators, x* = x, y* = y, z* = z⁻¹ = z³.
//! The basis is x^a y^b z^c ordered by (c, b, a). The Haar state is solved
//! for, and the whole structure is checked against the axioms before writing.
//!
//! Usage: cargo run --example derive_kac_paljutkin [output.qg]

use std::collections::BTreeMap;

use fqg::hopf::{verify_axioms, write_definition, StructureData};
use fqg::{FiniteQuantumGroup, Tolerance, C64};

type Word = (u8, u8, u8);
type Poly = BTreeMap<Word, C64>;

fn index((a, b, c): Word) -> usize {
    (a + 2 * b + 4 * c) as usize
}

fn word(i: usize) -> Word {
    ((i & 1) as u8, ((i >> 1) & 1) as u8, ((i >> 2) & 1) as u8)
}

fn add(p: &mut Poly, w: Word, c: C64) {
    *p.entry(w).or_default() += c;
}

/// Normal form of `x^a y^b z^c · x^a2 y^b2 z^c2`.
fn mul_words((a, b, c): Word, (a2, b2, c2): Word) -> Poly {
    // z swaps x and y when moved to the right
    let (a2, b2) = if c == 1 { (b2, a2) } else { (a2, b2) };
    let (p, q) = ((a + a2) % 2, (b + b2) % 2);
    let mut out = Poly::new();
    if c + c2 < 2 {
        add(&mut out, (p, q, c + c2), C64::new(1.0, 0.0));
    } else {
        // z² = ½(1 + x + y − xy)
        for ((dx, dy), s) in [((0, 0), 0.5), ((1, 0), 0.5), ((0, 1), 0.5), ((1, 1), -0.5)] {
            add(&mut out, ((p + dx) % 2, (q + dy) % 2, 0), C64::new(s, 0.0));
        }
    }
    out
}

fn mul(x: &Poly, y: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&u, &cu) in x {
        for (&v, &cv) in y {
            for (w, cw) in mul_words(u, v) {
                add(&mut out, w, cu * cv * cw);
            }
        }
    }
    out
}

fn single(w: Word) -> Poly {
    Poly::from([(w, C64::new(1.0, 0.0))])
}

type Tensor = BTreeMap<(Word, Word), C64>;

fn tensor_mul(x: &Tensor, y: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (&(u1, u2), &cu) in x {
        for (&(v1, v2), &cv) in y {
            for (w1, c1) in mul_words(u1, v1) {
                for (w2, c2) in mul_words(u2, v2) {
                    *out.entry((w1, w2)).or_default() += cu * cv * c1 * c2;
                }
            }
        }
    }
    out
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = 8;
    let one = C64::new(1.0, 0.0);
    let (x, y, z): (Word, Word, Word) = ((1, 0, 0), (0, 1, 0), (0, 0, 1));
    let e: Word = (0, 0, 0);

    let mut data = StructureData {
        name: "KacPaljutkin".into(),
        labels: (0..d)
            .map(|i| {
                let (a, b, c) = word(i);
                let s: String = [("x", a), ("y", b), ("z", c)]
                    .iter()
                    .filter(|(_, p)| *p == 1)
                    .map(|(g, _)| *g)
                    .collect();
                if s.is_empty() { "1".to_string() } else { s }
            })
            .collect(),
        mult: vec![C64::default(); d * d * d],
        unit: vec![C64::default(); d],
        star: vec![C64::default(); d * d],
        coproduct: vec![C64::default(); d * d * d],
        counit: vec![one; d],
        antipode: vec![C64::default(); d * d],
        haar: None,
        meta: vec![("presentation".into(), "x^2=y^2=1 xy=yx zx=yz zy=xz z^2=(1+x+y-xy)/2".into())],
    };
    data.unit[index(e)] = one;

    for i in 0..d {
        for j in 0..d {
            for (w, c) in mul_words(word(i), word(j)) {
                data.mult[(i * d + j) * d + index(w)] += c;
            }
        }
    }

    // Δ on generators, extended multiplicatively.
    let gx = Tensor::from([((x, x), one)]);
    let gy = Tensor::from([((y, y), one)]);
    let half = C64::new(0.5, 0.0);
    let pre = Tensor::from([
        ((e, e), half),
        ((e, x), half),
        ((y, e), half),
        ((y, x), -half),
    ]);
    let gz = tensor_mul(&pre, &Tensor::from([((z, z), one)]));
    let unit2 = Tensor::from([((e, e), one)]);

    // Star and antipode are anti-multiplicative: (x^a y^b z^c)^† = g(z)^c g(y)^b g(x)^a.
    let z_star = mul(&single(z), &mul(&single(z), &single(z)));
    for i in 0..d {
        let (a, b, c) = word(i);
        let pow = |t: &Tensor, k: u8| if k == 1 { t.clone() } else { unit2.clone() };
        let delta = tensor_mul(&tensor_mul(&pow(&gx, a), &pow(&gy, b)), &pow(&gz, c));
        for ((u, v), coef) in delta {
            data.coproduct[(i * d + index(u)) * d + index(v)] += coef;
        }
        let p = |g: Poly, k: u8| if k == 1 { g } else { single(e) };
        let s = mul(&mul(&p(single(z), c), &p(single(y), b)), &p(single(x), a));
        for (w, coef) in s {
            data.antipode[i * d + index(w)] += coef;
        }
        let st = mul(&mul(&p(z_star.clone(), c), &p(single(y), b)), &p(single(x), a));
        for (w, coef) in st {
            data.star[i * d + index(w)] += coef;
        }
    }

    let g = FiniteQuantumGroup::from_parts(data)?;
    let report = verify_axioms(&g, &Tolerance::default());
    if !report.passed() {
        return Err(format!("axioms fail: {}", report.failures().join(", ")).into());
    }
    eprintln!(
        "axioms pass (max residual {:.1e}); Haar state {:?}",
        report.max_residual(),
        g.haar_vec().iter().map(|z| z.re).collect::<Vec<_>>()
    );
    // Write the solved Haar state as supplied data.
    let mut parts = g.to_parts();
    parts.haar = Some(g.haar_vec().iter().map(|z| C64::new(clean(z.re), clean(z.im))).collect());
    let text = write_definition(&FiniteQuantumGroup::from_parts(parts)?);
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Snaps roundoff in the solved Haar state to the nearest multiple of 2⁻²⁰.
fn clean(v: f64) -> f64 {
    let s = (v * 1048576.0).round() / 1048576.0;
    if (s - v).abs() < 1e-12 { s } else { v }
}

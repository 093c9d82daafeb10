//! Symbolic fusion ring of the singlet category: labels, the displayed fusion
//! formulas, Grothendieck classes, ring-law checks, and the comparison with
//! tensor products of u_q^H(sl2) weight modules.
//!
//! Weights λ are rationals in α_- units; α_{r,s} = ((r − 1)p + 1 − s)/2 and λ is
//! atypical iff 2λ ∈ Z. The quantum-group weight is h = −2λ.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{fmt_rational, int, parse_rational, rat, Q};
use crate::error::{invalid, Error, Result};
use crate::repcat::{self, IndecLabel};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingletLabel {
    /// simple M_{r,s}, 1 ≤ s ≤ p; M_{r,p} = F_{r,p} = "P_{r,p}" is simple projective
    M { r: i64, s: u32 },
    /// F_{r,s} = F_{α_{r,s}}, s ≠ p
    F { r: i64, s: u32 },
    Fbar { r: i64, s: u32 },
    P { r: i64, s: u32 },
    /// typical F_λ, 2λ ∉ Z
    Typical(Q),
}

pub fn alpha(p: u32, r: i64, s: u32) -> Q {
    rat((r - 1) * p as i64 + 1 - s as i64, 2)
}

pub fn is_atypical(lambda: &Q) -> bool {
    (lambda * int(2)).is_integer()
}

/// (r, s) with α_{r,s} = λ, for atypical λ.
pub fn rs_of_alpha(p: u32, lambda: &Q) -> Option<(i64, u32)> {
    repcat::rs_of(p, &(-lambda * int(2)))
}

impl SingletLabel {
    /// F_λ for arbitrary λ, canonicalized.
    pub fn f_at(p: u32, lambda: &Q) -> SingletLabel {
        match rs_of_alpha(p, lambda) {
            None => SingletLabel::Typical(lambda.clone()),
            Some((r, s)) if s == p => SingletLabel::M { r, s },
            Some((r, s)) => SingletLabel::F { r, s },
        }
    }

    /// Applies the identifications F_{r,p} = P_{r,p} = M_{r,p} and F_{α} = F_{r,s}.
    pub fn canonical(self, p: u32) -> SingletLabel {
        match self {
            SingletLabel::F { r, s } | SingletLabel::P { r, s } if s == p => SingletLabel::M { r, s },
            SingletLabel::Typical(l) => SingletLabel::f_at(p, &l),
            other => other,
        }
    }

    pub fn validate(&self, p: u32) -> Result<()> {
        if p < 2 {
            return invalid("p must be at least 2");
        }
        match self {
            SingletLabel::M { s, .. } if (1..=p).contains(s) => Ok(()),
            SingletLabel::F { s, .. } | SingletLabel::Fbar { s, .. } | SingletLabel::P { s, .. } if (1..p).contains(s) => Ok(()),
            SingletLabel::Typical(l) if !is_atypical(l) => Ok(()),
            _ => invalid(format!("label {self} is out of range at p = {p}")),
        }
    }

    pub fn is_simple(&self) -> bool {
        matches!(self, SingletLabel::M { .. } | SingletLabel::Typical(_))
    }

    pub fn is_projective(&self, p: u32) -> bool {
        match self {
            SingletLabel::M { s, .. } => *s == p,
            SingletLabel::P { .. } | SingletLabel::Typical(_) => true,
            _ => false,
        }
    }

    /// `M:r,s`, `F:c` (c rational), `F:r,s`, `Fbar:r,s`, `P:r,s`.
    pub fn parse(text: &str, p: u32) -> Result<SingletLabel> {
        let (kind, rest) = text.split_once(':').ok_or_else(|| Error::Parse(format!("label {text:?} lacks ':'")))?;
        let pair = || -> Result<(i64, u32)> {
            let (a, b) = rest.split_once(',').ok_or_else(|| Error::Parse(format!("expected r,s in {text:?}")))?;
            Ok((
                a.trim().parse().map_err(|e| Error::Parse(format!("{text:?}: {e}")))?,
                b.trim().parse().map_err(|e| Error::Parse(format!("{text:?}: {e}")))?,
            ))
        };
        let l = match kind {
            "M" => {
                let (r, s) = pair()?;
                SingletLabel::M { r, s }
            }
            "F" if rest.contains(',') => {
                let (r, s) = pair()?;
                SingletLabel::F { r, s }
            }
            "F" => SingletLabel::Typical(parse_rational(rest)?),
            "Fbar" => {
                let (r, s) = pair()?;
                SingletLabel::Fbar { r, s }
            }
            "P" => {
                let (r, s) = pair()?;
                SingletLabel::P { r, s }
            }
            _ => return Err(Error::Parse(format!("unknown label kind {kind:?}"))),
        };
        // range-check before canonicalizing, but allow s = p for F and P
        match &l {
            SingletLabel::F { s, .. } | SingletLabel::P { s, .. } if *s == p => {}
            SingletLabel::Typical(_) => {}
            other => other.validate(p)?,
        }
        Ok(l.canonical(p))
    }

    /// The abelian dictionary into u_q^H(sl2) weight modules.
    pub fn to_quantum(&self) -> IndecLabel {
        match self.clone() {
            SingletLabel::M { r, s } => IndecLabel::M { r, s },
            SingletLabel::F { r, s } => IndecLabel::F { r, s },
            SingletLabel::Fbar { r, s } => IndecLabel::Fbar { r, s },
            SingletLabel::P { r, s } => IndecLabel::P { r, s },
            SingletLabel::Typical(l) => IndecLabel::Typical(-l * int(2)),
        }
    }

    pub fn from_quantum(l: &IndecLabel) -> SingletLabel {
        match l.clone() {
            IndecLabel::M { r, s } => SingletLabel::M { r, s },
            IndecLabel::F { r, s } => SingletLabel::F { r, s },
            IndecLabel::Fbar { r, s } => SingletLabel::Fbar { r, s },
            IndecLabel::P { r, s } => SingletLabel::P { r, s },
            IndecLabel::Typical(h) => SingletLabel::Typical(-h / int(2)),
        }
    }
}

impl fmt::Display for SingletLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingletLabel::M { r, s } => write!(f, "M:{r},{s}"),
            SingletLabel::F { r, s } => write!(f, "F:{r},{s}"),
            SingletLabel::Fbar { r, s } => write!(f, "Fbar:{r},{s}"),
            SingletLabel::P { r, s } => write!(f, "P:{r},{s}"),
            SingletLabel::Typical(l) => write!(f, "F:{}", fmt_rational(l)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// a decomposition into indecomposables
    Module,
    /// only the Grothendieck class (terms are simple labels)
    #[serde(rename = "K0")]
    K0,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub level: Level,
    pub terms: BTreeMap<SingletLabel, usize>,
}

impl Decomposition {
    fn module(terms: Vec<SingletLabel>, p: u32) -> Decomposition {
        let mut m = BTreeMap::new();
        for t in terms {
            *m.entry(t.canonical(p)).or_insert(0) += 1;
        }
        Decomposition { level: Level::Module, terms: m }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: serde_json::Map<String, serde_json::Value> =
            self.terms.iter().map(|(k, v)| (k.to_string(), serde_json::Value::from(*v))).collect();
        serde_json::json!({ "level": self.level, "terms": terms })
    }
}

/// Grothendieck-group element over simple labels.
pub type K0 = BTreeMap<SingletLabel, i64>;

fn k0_add(acc: &mut K0, v: &K0, c: i64) {
    for (k, x) in v {
        let e = acc.entry(k.clone()).or_insert(0);
        *e += c * x;
        if *e == 0 {
            acc.remove(k);
        }
    }
}

fn unit_k0(l: SingletLabel) -> K0 {
    BTreeMap::from([(l, 1)])
}

/// P_{r',s',r,s} = ⊕ P_{r+r'−1, ℓ} over 2p+1−s−s' ≤ ℓ ≤ p with ℓ + s + s' odd.
pub fn p_block(p: u32, r2: i64, s2: u32, r: i64, s: u32) -> Vec<SingletLabel> {
    let lo = 2 * p as i64 + 1 - s as i64 - s2 as i64;
    (lo.max(1)..=p as i64)
        .filter(|l| (l + s as i64 + s2 as i64).is_odd())
        .map(|l| SingletLabel::P { r: r + r2 - 1, s: l as u32 }.canonical(p))
        .collect()
}

/// ℓ over |s−s'|+1 ≤ ℓ ≤ min(s+s'−1, 2p−1−s−s') with ℓ + s + s' odd.
fn ell_range(p: u32, s2: u32, s: u32) -> Vec<u32> {
    let (s, s2, p) = (s as i64, s2 as i64, p as i64);
    let lo = (s - s2).abs() + 1;
    let hi = (s + s2 - 1).min(2 * p - 1 - s - s2);
    (lo..=hi).filter(|l| (l + s + s2).is_odd()).map(|l| l as u32).collect()
}

/// M_{r',s'} ⊠ M_{r,s}.
pub fn fuse_mm(p: u32, r2: i64, s2: u32, r: i64, s: u32) -> Vec<SingletLabel> {
    let mut out = p_block(p, r2, s2, r, s);
    out.extend(ell_range(p, s2, s).into_iter().map(|l| SingletLabel::M { r: r + r2 - 1, s: l }));
    out
}

/// M_{r',s'} ⊠ F_{r,s}.
pub fn fuse_mf(p: u32, r2: i64, s2: u32, r: i64, s: u32) -> Vec<SingletLabel> {
    let mut out = p_block(p, r2, s2, r, s);
    out.extend(p_block(p, r2, s2, r + 1, p - s));
    out.extend(ell_range(p, s2, s).into_iter().map(|l| SingletLabel::F { r: r + r2 - 1, s: l }));
    out
}

/// M_{r',s'} ⊠ F̄_{r,s}; the F̄ summands carry index r + r' − 1 (the unit law and the
/// Grothendieck image of A ⊠ F̄ both force this).
pub fn fuse_mfbar(p: u32, r2: i64, s2: u32, r: i64, s: u32) -> Vec<SingletLabel> {
    let mut out = p_block(p, r2, s2, r + 1, p - s);
    out.extend(p_block(p, r2, s2, r, s));
    out.extend(ell_range(p, s2, s).into_iter().map(|l| SingletLabel::Fbar { r: r + r2 - 1, s: l }));
    out
}

/// M_{r,s} ⊠ F_λ = ⊕_{ℓ<s} F_{λ + α_{r,s} + ℓ}.
pub fn fuse_mtyp(p: u32, r: i64, s: u32, lambda: &Q) -> Vec<SingletLabel> {
    let a = alpha(p, r, s);
    (0..s as i64).map(|l| SingletLabel::f_at(p, &(lambda + &a + int(l)))).collect()
}

/// A ⊠ F_{r',s'} and A ⊠ F̄_{r',s'} for A = F_{1,1}.
pub fn fuse_a(p: u32, other: &SingletLabel) -> Option<Vec<SingletLabel>> {
    match *other {
        SingletLabel::F { r, s } => {
            let mut out = p_block(p, 2, p - 1, r, s);
            out.extend(p_block(p, 2, p - 1, r + 1, p - s));
            out.push(SingletLabel::F { r: r + 1, s: p - s }.canonical(p));
            out.push(SingletLabel::F { r, s });
            Some(out)
        }
        SingletLabel::Fbar { r, s } => {
            let mut out = p_block(p, 2, p - 1, r, s);
            out.extend(p_block(p, 2, p - 1, r + 1, p - s));
            out.push(SingletLabel::P { r: r + 1, s: p - s }.canonical(p));
            Some(out)
        }
        SingletLabel::Typical(ref mu) => Some((0..p as i64).map(|l| SingletLabel::f_at(p, &(mu + int(l)))).collect()),
        _ => None,
    }
}

pub fn groth_class(a: &SingletLabel, p: u32) -> K0 {
    let m = |r: i64, s: u32| SingletLabel::M { r, s };
    match a.clone().canonical(p) {
        l @ (SingletLabel::M { .. } | SingletLabel::Typical(_)) => unit_k0(l),
        SingletLabel::F { r, s } => BTreeMap::from([(m(r, s), 1), (m(r + 1, p - s), 1)]),
        SingletLabel::Fbar { r, s } => BTreeMap::from([(m(r, s), 1), (m(r + 1, p - s), 1)]),
        SingletLabel::P { r, s } => {
            let mut k = BTreeMap::from([(m(r, s), 2)]);
            k0_add(&mut k, &unit_k0(m(r - 1, p - s)), 1);
            k0_add(&mut k, &unit_k0(m(r + 1, p - s)), 1);
            k
        }
    }
}

fn class_of_list(l: &[SingletLabel], p: u32) -> K0 {
    let mut acc = K0::new();
    for x in l {
        k0_add(&mut acc, &groth_class(x, p), 1);
    }
    acc
}

/// Product of two simple classes. Typical ⊠ typical uses the character identity
/// [F_λ][F_μ] = Σ_{ℓ<p} [F_{λ+μ+ℓ}] (Verma characters of the quantum-group side).
pub fn simple_product(a: &SingletLabel, b: &SingletLabel, p: u32) -> K0 {
    match (a, b) {
        (SingletLabel::M { r: r2, s: s2 }, SingletLabel::M { r, s }) => class_of_list(&fuse_mm(p, *r2, *s2, *r, *s), p),
        (SingletLabel::M { r, s }, SingletLabel::Typical(l)) | (SingletLabel::Typical(l), SingletLabel::M { r, s }) => {
            class_of_list(&fuse_mtyp(p, *r, *s, l), p)
        }
        (SingletLabel::Typical(l), SingletLabel::Typical(m)) => {
            let terms: Vec<_> = (0..p as i64).map(|k| SingletLabel::f_at(p, &(l + m + int(k)))).collect();
            class_of_list(&terms, p)
        }
        _ => panic!("simple_product on non-simple labels"),
    }
}

/// Bilinear extension of the simple-by-simple product.
pub fn k0_product(a: &K0, b: &K0, p: u32) -> K0 {
    let mut acc = K0::new();
    for (x, cx) in a {
        for (y, cy) in b {
            k0_add(&mut acc, &simple_product(x, y, p), cx * cy);
        }
    }
    acc
}

/// Splits a class into projective indecomposables, if possible.
pub fn projective_split(v: &K0, p: u32) -> Option<Vec<SingletLabel>> {
    let mut out = Vec::new();
    // per block s: chain coefficients of L_n
    let mut blocks: BTreeMap<u32, BTreeMap<i64, i64>> = BTreeMap::new();
    for (l, c) in v {
        if *c < 0 {
            return None;
        }
        match *l {
            SingletLabel::M { r, s } if s < p => {
                let sb = if r.is_even() { s } else { p - s };
                *blocks.entry(sb).or_default().entry(r).or_insert(0) += c;
            }
            _ => out.extend(std::iter::repeat_n(l.clone(), *c as usize)),
        }
    }
    for (sb, mut chain) in blocks {
        // P_n = 2 L_n + L_{n−1} + L_{n+1}; peel from the lowest n
        while let Some((&n0, &c)) = chain.iter().next() {
            if c == 0 {
                chain.remove(&n0);
                continue;
            }
            let n = n0 + 1;
            for (m, k) in [(n - 1, 1), (n, 2), (n + 1, 1)] {
                let e = chain.entry(m).or_insert(0);
                *e -= k * c;
                if *e < 0 {
                    return None;
                }
            }
            let s = if n.is_even() { sb } else { p - sb };
            out.extend(std::iter::repeat_n(SingletLabel::P { r: n, s }, c as usize));
            chain.retain(|_, v| *v != 0);
        }
    }
    Some(out)
}

pub fn fuse(a: &SingletLabel, b: &SingletLabel, p: u32) -> Result<Decomposition> {
    a.validate(p)?;
    b.validate(p)?;
    let (a, b) = (a.clone().canonical(p), b.clone().canonical(p));
    // put an M first, then A = F_{1,1}
    let a_label = SingletLabel::F { r: 1, s: 1 };
    let (a, b) = match (&a, &b) {
        (SingletLabel::M { .. }, _) => (a, b),
        (_, SingletLabel::M { .. }) => (b, a),
        _ if b == a_label && a != a_label => (b, a),
        _ => (a, b),
    };
    let module = |v: Vec<SingletLabel>| Ok(Decomposition::module(v, p));
    if let SingletLabel::M { r: r2, s: s2 } = a {
        match b {
            SingletLabel::M { r, s } => return module(fuse_mm(p, r2, s2, r, s)),
            SingletLabel::F { r, s } => return module(fuse_mf(p, r2, s2, r, s)),
            SingletLabel::Fbar { r, s } => return module(fuse_mfbar(p, r2, s2, r, s)),
            SingletLabel::Typical(ref l) => return module(fuse_mtyp(p, r2, s2, l)),
            SingletLabel::P { .. } => {}
        }
    }
    if a == a_label {
        if let Some(v) = fuse_a(p, &b) {
            return module(v);
        }
    }
    let class = k0_product(&groth_class(&a, p), &groth_class(&b, p), p);
    if a.is_projective(p) || b.is_projective(p) {
        if let Some(v) = projective_split(&class, p) {
            return module(v);
        }
        return Err(Error::Degenerate(format!("{a} ⊠ {b}: projective class does not split")));
    }
    Ok(Decomposition { level: Level::K0, terms: class.into_iter().map(|(k, v)| (k, v as usize)).collect() })
}

pub fn decomposition_class(d: &Decomposition, p: u32) -> K0 {
    let mut acc = K0::new();
    for (l, k) in &d.terms {
        k0_add(&mut acc, &groth_class(l, p), *k as i64);
    }
    acc
}

/// All labels with |r| ≤ window at p, plus two typical weights.
pub fn labels_in_window(p: u32, window: i64) -> Vec<SingletLabel> {
    let mut out = Vec::new();
    for r in -window..=window {
        for s in 1..=p {
            out.push(SingletLabel::M { r, s });
            if s < p {
                out.push(SingletLabel::F { r, s });
                out.push(SingletLabel::Fbar { r, s });
                out.push(SingletLabel::P { r, s });
            }
        }
    }
    out.push(SingletLabel::Typical(rat(1, 3)));
    out.push(SingletLabel::Typical(rat(-2, 5)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingReport {
    pub ok: bool,
    pub pairs: usize,
    pub triples: usize,
    pub first_violation: Option<String>,
}

/// Commutativity (module level and K0), unit law, Grothendieck compatibility of
/// every fusion, and associativity on simple triples (which implies it on classes).
pub fn check_ring_laws(p: u32, window: i64) -> Result<RingReport> {
    let labels = labels_in_window(p, window);
    let unit = SingletLabel::M { r: 1, s: 1 };
    let pairs: Vec<(usize, usize)> = (0..labels.len()).flat_map(|i| (i..labels.len()).map(move |j| (i, j))).collect();
    let violations: Vec<Option<String>> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Option<String>> {
            let (a, b) = (&labels[i], &labels[j]);
            let ab = fuse(a, b, p)?;
            let ba = fuse(b, a, p)?;
            if ab != ba {
                return Ok(Some(format!("commutativity fails for {a}, {b}")));
            }
            let shadow = k0_product(&groth_class(a, p), &groth_class(b, p), p);
            if decomposition_class(&ab, p) != shadow {
                return Ok(Some(format!("Grothendieck class of {a} ⊠ {b} differs from the product of classes")));
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    if let Some(v) = violations.into_iter().flatten().next() {
        return Ok(RingReport { ok: false, pairs: pairs.len(), triples: 0, first_violation: Some(v) });
    }
    for a in &labels {
        let d = fuse(&unit, a, p)?;
        if d != Decomposition::module(vec![a.clone()], p) {
            return Ok(RingReport { ok: false, pairs: pairs.len(), triples: 0, first_violation: Some(format!("unit law fails for {a}")) });
        }
    }
    let simples: Vec<&SingletLabel> = labels.iter().filter(|l| l.is_simple()).collect();
    let triples: Vec<(usize, usize, usize)> = (0..simples.len()).cartesian_product(0..simples.len()).cartesian_product(0..simples.len()).map(|((a, b), c)| (a, b, c)).collect();
    let bad = triples.par_iter().find_any(|&&(i, j, k)| {
        let (a, b, c) = (unit_k0(simples[i].clone()), unit_k0(simples[j].clone()), unit_k0(simples[k].clone()));
        k0_product(&k0_product(&a, &b, p), &c, p) != k0_product(&a, &k0_product(&b, &c, p), p)
    });
    Ok(RingReport {
        ok: bad.is_none(),
        pairs: pairs.len(),
        triples: triples.len(),
        first_violation: bad.map(|&(i, j, k)| format!("associativity fails for {}, {}, {}", simples[i], simples[j], simples[k])),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub left: String,
    pub right: String,
    pub level: Level,
    pub ok: bool,
    pub fusion: Vec<String>,
    pub tensor: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossReport {
    pub ok: bool,
    pub pairs: Vec<PairCheck>,
}

fn expand(terms: &BTreeMap<SingletLabel, usize>) -> Vec<String> {
    terms.iter().map(|(l, k)| if *k == 1 { l.to_string() } else { format!("{k}x{l}") }).collect()
}

/// Compares fuse(a, b) with the decomposition of the tensor product of the
/// corresponding quantum-group modules.
pub fn cross_check(p: u32, sample: &[(SingletLabel, SingletLabel)]) -> Result<CrossReport> {
    let pairs: Vec<PairCheck> = sample
        .par_iter()
        .map(|(a, b)| -> Result<PairCheck> {
            let f = fuse(a, b, p)?;
            let ma = a.to_quantum().module(p)?;
            let mb = b.to_quantum().module(p)?;
            let t = repcat::tensor(&ma, &mb)?;
            let (ok, tensor_terms) = match f.level {
                Level::Module => {
                    let d = repcat::decompose(&t)?;
                    let mapped: BTreeMap<SingletLabel, usize> = d.iter().map(|(l, k)| (SingletLabel::from_quantum(l), *k)).collect();
                    (mapped == f.terms, expand(&mapped))
                }
                Level::K0 => {
                    let cf = repcat::composition_factors(&t)?;
                    let mapped: BTreeMap<SingletLabel, usize> = cf.iter().map(|(l, k)| (SingletLabel::from_quantum(l), *k)).collect();
                    (mapped == f.terms, expand(&mapped))
                }
            };
            Ok(PairCheck { left: a.to_string(), right: b.to_string(), level: f.level, ok, fusion: expand(&f.terms), tensor: tensor_terms })
        })
        .collect::<Result<_>>()?;
    Ok(CrossReport { ok: pairs.iter().all(|c| c.ok), pairs })
}

/// The shipped sample: M⊠M, M⊠F, M⊠F̄, M⊠F_λ, A⊠F_μ, A⊠F, A⊠F̄, and K0-level pairs.
pub fn default_sample(p: u32) -> Vec<(SingletLabel, SingletLabel)> {
    use SingletLabel::*;
    let a = F { r: 1, s: 1 };
    let mut v = vec![
        (M { r: 0, s: 1 }, M { r: 0, s: 1 }),
        (M { r: 1, s: 1 }, M { r: 2, s: p - 1 }),
        (M { r: 2, s: 1 }, M { r: 1, s: p.min(2) }),
        (M { r: 1, s: p }, M { r: 0, s: 1 }),
        (M { r: 1, s: p - 1 }, M { r: 1, s: p - 1 }),
        (M { r: 2, s: p }, M { r: 1, s: p }),
        (M { r: 1, s: 1 }, Typical(rat(1, 3))),
        (M { r: 0, s: p }, Typical(rat(-1, 5))),
        (M { r: 2, s: p - 1 }, Typical(rat(1, 4))),
        (a.clone(), Typical(rat(1, 3))),
        (a.clone(), Typical(rat(2, 7))),
        (M { r: 1, s: p - 1 }, F { r: 0, s: 1 }),
        (M { r: 0, s: 1 }, Fbar { r: 1, s: 1 }),
        (M { r: 2, s: p - 1 }, Fbar { r: 0, s: p - 1 }),
        (a.clone(), F { r: 0, s: 1 }),
        (a.clone(), Fbar { r: 1, s: p - 1 }),
        (M { r: 1, s: 1 }, P { r: 0, s: 1 }),
        (F { r: 1, s: 1 }, Fbar { r: 1, s: 1 }),
        (Typical(rat(1, 4)), Typical(rat(1, 4))),
    ];
    if p >= 3 {
        v.push((M { r: 2, s: 1 }, M { r: 1, s: 2 }));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use SingletLabel::*;

    fn d(p: u32, v: Vec<SingletLabel>) -> Decomposition {
        Decomposition::module(v, p)
    }

    #[test]
    fn simple_examples() {
        for p in 2..=5u32 {
            for r in -2..=2 {
                for s in 1..=p {
                    assert_eq!(fuse(&M { r: 1, s: 1 }, &M { r, s }, p).unwrap(), d(p, vec![M { r, s }]));
                }
            }
            assert_eq!(fuse(&M { r: 0, s: 1 }, &M { r: 2, s: 1 }, p).unwrap(), d(p, vec![M { r: 1, s: 1 }]));
        }
        assert_eq!(fuse(&M { r: 0, s: 1 }, &M { r: 0, s: 1 }, 2).unwrap(), d(2, vec![M { r: -1, s: 1 }]));
    }

    #[test]
    fn simple_current_group() {
        let p = 3;
        for r in -5..=5i64 {
            for r2 in -5..=5i64 {
                assert_eq!(fuse(&M { r, s: 1 }, &M { r: r2, s: 1 }, p).unwrap(), d(p, vec![M { r: r + r2 - 1, s: 1 }]));
            }
            // inverse
            assert_eq!(fuse(&M { r, s: 1 }, &M { r: 2 - r, s: 1 }, p).unwrap(), d(p, vec![M { r: 1, s: 1 }]));
        }
    }

    #[test]
    fn typical_fusions() {
        for p in 2..=4u32 {
            let mu = rat(1, 3);
            let a = F { r: 1, s: 1 };
            let exp: Vec<_> = (0..p as i64).map(|l| Typical(&mu + int(l))).collect();
            assert_eq!(fuse(&a, &Typical(mu.clone()), p).unwrap(), d(p, exp));
            for (r, s) in [(0i64, 1u32), (2, p - 1), (1, p)] {
                let exp: Vec<_> = (0..s as i64).map(|l| Typical(&mu + alpha(p, r, s) + int(l))).collect();
                assert_eq!(fuse(&M { r, s }, &Typical(mu.clone()), p).unwrap(), d(p, exp));
            }
        }
    }

    #[test]
    fn alpha_and_labels() {
        let p = 3;
        assert_eq!(alpha(p, 1, 1), int(0));
        assert_eq!(SingletLabel::f_at(p, &alpha(p, 2, 1)), F { r: 2, s: 1 });
        assert_eq!(SingletLabel::f_at(p, &alpha(p, 2, 3)), M { r: 2, s: 3 });
        assert_eq!(SingletLabel::parse("P:1,3", p).unwrap(), M { r: 1, s: 3 });
        assert_eq!(SingletLabel::parse("F:1,3", p).unwrap(), M { r: 1, s: 3 });
        assert_eq!(SingletLabel::parse("F:0", p).unwrap(), F { r: 1, s: 1 });
        assert_eq!(SingletLabel::parse("F:1/3", p).unwrap(), Typical(rat(1, 3)));
        assert!(SingletLabel::parse("M:1,4", p).is_err());
        assert!(SingletLabel::parse("Fbar:1,3", p).is_err());
        assert!(fuse(&M { r: 0, s: 1 }, &M { r: 0, s: 1 }, 1).is_err());
        for l in labels_in_window(p, 1) {
            assert_eq!(SingletLabel::parse(&l.to_string(), p).unwrap(), l.clone().canonical(p));
        }
    }

    #[test]
    fn groth_classes() {
        let p = 3;
        assert_eq!(groth_class(&M { r: 1, s: 2 }, p), unit_k0(M { r: 1, s: 2 }));
        assert_eq!(
            groth_class(&Typical(alpha(p, 1, 2)), p),
            BTreeMap::from([(M { r: 1, s: 2 }, 1), (M { r: 2, s: 1 }, 1)])
        );
        assert_eq!(
            groth_class(&P { r: 1, s: 1 }, p),
            BTreeMap::from([(M { r: 1, s: 1 }, 2), (M { r: 0, s: 2 }, 1), (M { r: 2, s: 2 }, 1)])
        );
    }

    #[test]
    fn empty_p_block_ranges() {
        // lower index above p gives the empty sum
        assert!(p_block(4, 1, 1, 1, 1).is_empty());
        assert_eq!(p_block(3, 1, 3, 1, 3), vec![P { r: 1, s: 1 }, M { r: 1, s: 3 }]);
    }

    #[test]
    fn expanded_a_fusion_lines_agree() {
        // the two displayed forms of A ⊠ F_{r',s'} and A ⊠ F̄_{r',s'}
        for p in 2..=5u32 {
            for s in 1..p {
                let r = 0;
                let mut first = p_block(p, 2, p - 1, r, s);
                first.extend(p_block(p, 2, p - 1, r + 1, p - s));
                let mut second: Vec<_> = ((p + 2 - s) as i64..=p as i64)
                    .filter(|l| (l - (p - s) as i64).is_even())
                    .map(|l| P { r: r + 1, s: l as u32 }.canonical(p))
                    .collect();
                second.extend(((s + 2) as i64..=p as i64).filter(|l| (l - s as i64).is_even()).map(|l| P { r: r + 2, s: l as u32 }.canonical(p)));
                first.sort();
                second.sort();
                assert_eq!(first, second);
            }
        }
    }

    #[test]
    fn ring_laws() {
        for (p, w) in [(2u32, 3i64), (3, 2)] {
            let r = check_ring_laws(p, w).unwrap();
            assert!(r.ok, "{:?}", r.first_violation);
        }
    }

    #[test]
    fn printed_fbar_index_breaks_the_unit_law() {
        // with index r + r' the unit M_{1,1} would shift F̄_{r,s} to F̄_{r+1,s}
        let p = 3;
        let f = fuse(&M { r: 1, s: 1 }, &Fbar { r: 0, s: 1 }, p).unwrap();
        assert_eq!(f, d(p, vec![Fbar { r: 0, s: 1 }]));
    }

    #[test]
    fn cross_check_small() {
        for p in [2u32, 3] {
            let r = cross_check(p, &default_sample(p)).unwrap();
            for c in &r.pairs {
                assert!(c.ok, "p={p}: {c:?}");
            }
        }
    }
}

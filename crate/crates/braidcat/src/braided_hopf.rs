//! Presentations of realizing quantum groups U = B(X) ⊗ B(X*) ⊗ C and of
//! Radford biproducts B(X) ⋊ C, with a normal-ordering engine.
//!
//! Normal form of a monomial: x-word · group-likes · H-monomial · x*-word,
//! with both words Nichols basis words. Conventions:
//!   K_a x_i = χ_{a,i} x_i K_a,       x*_i K_a = χ_{a,i} K_a x*_i,
//!   H_b x_i = x_i (H_b + w_{b,i}),   x*_i H_b = (H_b + w_{b,i}) x*_i,
//!   x*_j x_i = q_ij x_i x*_j + δ_ij (c_0 + c_1 ḡ_i g_i)   with (c_0, c_1) = (1, −1).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycNum, Q};
use crate::error::{invalid, Error, Result};
use crate::graded_braid::BraidedObject;
use crate::linalg::Matrix;
use crate::nichols::{NicholsConfig, NicholsData, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    X(u8),
    Xs(u8),
    /// K_a^e
    G(u8, i64),
    H(u8),
}

/// Noncommutative polynomial: Σ c · (word in letters).
pub type NcPoly = Vec<(Vec<Letter>, CycNum)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupLikeGen {
    pub name: String,
    /// None for infinite order
    pub order: Option<u32>,
}

/// Cartan part C: group-likes with characters on X and primitives with weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartanSpec {
    pub grouplikes: Vec<GroupLikeGen>,
    /// chi[a][i]: K_a x_i K_a^{-1} = chi x_i
    pub chi: Vec<Vec<CycNum>>,
    pub primitives: Vec<String>,
    /// weights[b][i]: [H_b, x_i] = w x_i
    pub weights: Vec<Vec<CycNum>>,
    /// exponent vectors of g_i and ḡ_i over the group-likes
    pub g: Vec<Vec<i64>>,
    pub gbar: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Relation {
    pub label: String,
    pub poly: NcPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfPresentation {
    pub name: String,
    pub q: Vec<Vec<CycNum>>,
    pub cartan: CartanSpec,
    /// whether x*_i generators (and linking relations) are present
    pub with_dual: bool,
    /// linking right-hand side c_0 + c_1 ḡ_i g_i
    pub link: (CycNum, CycNum),
    pub relations: Vec<Relation>,
}

fn lettered(w: &[u8], f: fn(u8) -> Letter) -> Vec<Letter> {
    w.iter().map(|&l| f(l)).collect()
}

fn gl_letters(e: &[i64]) -> Vec<Letter> {
    e.iter().enumerate().filter(|(_, &k)| k != 0).map(|(a, &k)| Letter::G(a as u8, k)).collect()
}

fn char_value(chi: &[Vec<CycNum>], e: &[i64], i: usize) -> Result<CycNum> {
    let mut acc = CycNum::one();
    for (a, &k) in e.iter().enumerate() {
        if k != 0 {
            acc = &acc * &chi[a][i].pow(k)?;
        }
    }
    Ok(acc)
}

impl CartanSpec {
    fn validate(&self, n: usize) -> Result<()> {
        let na = self.grouplikes.len();
        if self.chi.len() != na || self.chi.iter().any(|r| r.len() != n) {
            return invalid("character table must be (#group-likes) x rank");
        }
        if self.weights.len() != self.primitives.len() || self.weights.iter().any(|r| r.len() != n) {
            return invalid("weight table must be (#primitives) x rank");
        }
        if self.g.len() != n || self.gbar.len() != n || self.g.iter().chain(&self.gbar).any(|e| e.len() != na) {
            return invalid("g_i / ḡ_i exponent vectors have the wrong shape");
        }
        if self.grouplikes.iter().any(|g| g.order == Some(0)) {
            return invalid("group-like order must be positive");
        }
        Ok(())
    }
}

impl HopfPresentation {
    pub fn rank(&self) -> usize {
        self.q.len()
    }
}

/// Builds U = B(X) ⊗ B(X*) ⊗ C, checking that g_i, ḡ_i realize σ(γ_i, −), σ(−, γ_i).
pub fn build_uq(x: &BraidedObject, cartan: CartanSpec, cfg: &NicholsConfig) -> Result<HopfPresentation> {
    let q = x.braid_matrix()?;
    build_from_matrix("U", q, cartan, true, cfg)
}

/// B(X) ⋊ C without the dual half.
pub fn radford_biproduct(x: &BraidedObject, cartan: CartanSpec, cfg: &NicholsConfig) -> Result<HopfPresentation> {
    let q = x.braid_matrix()?;
    build_from_matrix("B(X)#C", q, cartan, false, cfg)
}

pub fn build_from_matrix(
    name: &str,
    q: Vec<Vec<CycNum>>,
    cartan: CartanSpec,
    with_dual: bool,
    cfg: &NicholsConfig,
) -> Result<HopfPresentation> {
    let n = q.len();
    cartan.validate(n)?;
    for i in 0..n {
        for j in 0..n {
            if char_value(&cartan.chi, &cartan.g[i], j)? != q[i][j] {
                return Err(Error::InvalidArgument(format!(
                    "no realizing group-like: g_{i} does not act on x_{j} by sigma(gamma_{i}, gamma_{j})"
                )));
            }
            if with_dual && char_value(&cartan.chi, &cartan.gbar[i], j)? != q[j][i] {
                return Err(Error::InvalidArgument(format!(
                    "no realizing group-like: gbar_{i} does not act on x_{j} by sigma(gamma_{j}, gamma_{i})"
                )));
            }
        }
    }
    let nichols = NicholsData::from_matrix(q.clone(), cfg)?;
    if !nichols.is_finite() {
        return Err(Error::Unsupported(format!(
            "Nichols algebra not finite-dimensional within degree {}",
            cfg.max_degree
        )));
    }
    let mut pres = HopfPresentation {
        name: name.to_string(),
        q,
        cartan,
        with_dual,
        link: (CycNum::one(), CycNum::from_int(-1)),
        relations: Vec::new(),
    };
    pres.relations = standard_relations(&pres, &nichols)?;
    Ok(pres)
}

fn standard_relations(p: &HopfPresentation, nichols: &NicholsData) -> Result<Vec<Relation>> {
    let n = p.rank();
    let c = &p.cartan;
    let one = CycNum::one;
    let mut rels = Vec::new();
    for rel in nichols.minimal_relations()? {
        let word = |f: fn(u8) -> Letter| rel.iter().map(|(w, k)| (lettered(w, f), k.clone())).collect::<NcPoly>();
        let tag = rel[0].0.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("");
        rels.push(Relation { label: format!("nichols:x[{tag}]"), poly: word(Letter::X) });
        if p.with_dual {
            rels.push(Relation { label: format!("nichols:x*[{tag}]"), poly: word(Letter::Xs) });
        }
    }
    for (a, gl) in c.grouplikes.iter().enumerate() {
        if let Some(m) = gl.order {
            rels.push(Relation {
                label: format!("order:{}", gl.name),
                poly: vec![(vec![Letter::G(a as u8, m as i64)], one()), (vec![], -one())],
            });
        }
        for i in 0..n {
            let k = Letter::G(a as u8, 1);
            rels.push(Relation {
                label: format!("comm:{},x{}", gl.name, i + 1),
                poly: vec![(vec![k.clone(), Letter::X(i as u8)], one()), (vec![Letter::X(i as u8), k.clone()], -&c.chi[a][i])],
            });
            if p.with_dual {
                rels.push(Relation {
                    label: format!("comm:x{}*,{}", i + 1, gl.name),
                    poly: vec![(vec![Letter::Xs(i as u8), k.clone()], one()), (vec![k.clone(), Letter::Xs(i as u8)], -&c.chi[a][i])],
                });
            }
        }
        for b in 0..c.primitives.len() {
            let k = Letter::G(a as u8, 1);
            rels.push(Relation {
                label: format!("comm:{},{}", c.primitives[b], gl.name),
                poly: vec![(vec![Letter::H(b as u8), k.clone()], one()), (vec![k, Letter::H(b as u8)], -one())],
            });
        }
        for b in a + 1..c.grouplikes.len() {
            rels.push(Relation {
                label: format!("comm:{},{}", gl.name, c.grouplikes[b].name),
                poly: vec![
                    (vec![Letter::G(a as u8, 1), Letter::G(b as u8, 1)], one()),
                    (vec![Letter::G(b as u8, 1), Letter::G(a as u8, 1)], -one()),
                ],
            });
        }
    }
    for (b, hn) in c.primitives.iter().enumerate() {
        let h = Letter::H(b as u8);
        for i in 0..n {
            rels.push(Relation {
                label: format!("comm:{},x{}", hn, i + 1),
                poly: vec![
                    (vec![h.clone(), Letter::X(i as u8)], one()),
                    (vec![Letter::X(i as u8), h.clone()], -one()),
                    (vec![Letter::X(i as u8)], -&c.weights[b][i]),
                ],
            });
            if p.with_dual {
                rels.push(Relation {
                    label: format!("comm:x{}*,{}", i + 1, hn),
                    poly: vec![
                        (vec![Letter::Xs(i as u8), h.clone()], one()),
                        (vec![h.clone(), Letter::Xs(i as u8)], -one()),
                        (vec![Letter::Xs(i as u8)], -&c.weights[b][i]),
                    ],
                });
            }
        }
        for b2 in b + 1..c.primitives.len() {
            let h2 = Letter::H(b2 as u8);
            rels.push(Relation {
                label: format!("comm:{},{}", hn, c.primitives[b2]),
                poly: vec![(vec![h.clone(), h2.clone()], one()), (vec![h2, h.clone()], -one())],
            });
        }
    }
    if p.with_dual {
        for i in 0..n {
            for j in 0..n {
                let mut poly = vec![
                    (vec![Letter::Xs(j as u8), Letter::X(i as u8)], one()),
                    (vec![Letter::X(i as u8), Letter::Xs(j as u8)], -&p.q[i][j]),
                ];
                if i == j {
                    poly.push((vec![], -&p.link.0));
                    let mut e = c.gbar[i].clone();
                    for (a, k) in c.g[i].iter().enumerate() {
                        e[a] += k;
                    }
                    poly.push((gl_letters(&e), -&p.link.1));
                }
                rels.push(Relation { label: format!("linking:{},{}", j + 1, i + 1), poly });
            }
        }
    }
    Ok(rels)
}

impl std::fmt::Display for Letter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Letter::X(i) => write!(f, "x{}", i + 1),
            Letter::Xs(i) => write!(f, "x{}*", i + 1),
            Letter::G(a, e) => write!(f, "K{}^{}", a + 1, e),
            Letter::H(b) => write!(f, "H{}", b + 1),
        }
    }
}

/// PBW-ordered monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub xs: Word,
    pub g: Vec<i64>,
    pub h: Vec<u32>,
    pub ys: Word,
}

pub type Elem = BTreeMap<Mono, CycNum>;
pub type Elem2 = BTreeMap<(Mono, Mono), CycNum>;

fn add_term<K: Ord>(e: &mut BTreeMap<K, CycNum>, k: K, c: CycNum) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match e.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// The algebra defined by a presentation, realized on PBW normal forms.
#[derive(Clone, Debug)]
pub struct QuantumGroup {
    pub pres: HopfPresentation,
    nichols: NicholsData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub ok: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn from(checked: usize, failures: Vec<String>) -> Self {
        CheckReport { ok: failures.is_empty(), checked, failures }
    }
}

/// Generator matrices of a finite-dimensional module.
#[derive(Clone, Debug)]
pub struct Representation {
    pub name: String,
    pub dim: usize,
    pub x: Vec<Matrix<CycNum>>,
    pub xs: Vec<Matrix<CycNum>>,
    pub grouplikes: Vec<Matrix<CycNum>>,
    pub primitives: Vec<Matrix<CycNum>>,
}

impl QuantumGroup {
    pub fn new(pres: HopfPresentation) -> Result<Self> {
        let mut deg = 4;
        loop {
            let nichols = NicholsData::from_matrix(pres.q.clone(), &NicholsConfig { max_degree: deg, max_words: 5000 })?;
            if nichols.is_finite() {
                return Ok(QuantumGroup { pres, nichols });
            }
            if deg >= 16 {
                return Err(Error::Unsupported("Nichols part not finite-dimensional".into()));
            }
            deg += 4;
        }
    }

    pub fn nichols(&self) -> &NicholsData {
        &self.nichols
    }

    fn na(&self) -> usize {
        self.pres.cartan.grouplikes.len()
    }

    fn nh(&self) -> usize {
        self.pres.cartan.primitives.len()
    }

    pub fn unit_mono(&self) -> Mono {
        Mono { xs: vec![], g: vec![0; self.na()], h: vec![0; self.nh()], ys: vec![] }
    }

    pub fn one(&self) -> Elem {
        BTreeMap::from([(self.unit_mono(), CycNum::one())])
    }

    fn norm_g(&self, g: &mut [i64]) {
        for (a, gl) in self.pres.cartan.grouplikes.iter().enumerate() {
            if let Some(m) = gl.order {
                g[a] = g[a].rem_euclid(m as i64);
            }
        }
    }

    /// χ_G evaluated on the x-letters of a word (the scalar in G x = χ x G).
    fn chi_word(&self, e: &[i64], w: &[u8]) -> CycNum {
        let mut acc = CycNum::one();
        for &l in w {
            acc = &acc * &char_value(&self.pres.cartan.chi, e, l as usize).expect("nonzero character");
        }
        acc
    }

    fn nf(&self, w: &[u8]) -> Vec<(Word, CycNum)> {
        self.nichols.normal_form(w).unwrap_or_default()
    }

    fn mono_times_letter(&self, m: &Mono, c: &CycNum, l: &Letter, out: &mut Elem) -> Result<()> {
        match *l {
            Letter::Xs(j) => {
                if !self.pres.with_dual {
                    return invalid("presentation has no dual generators");
                }
                let mut w = m.ys.clone();
                w.push(j);
                for (b, k) in self.nf(&w) {
                    add_term(out, Mono { ys: b, ..m.clone() }, c * &k);
                }
            }
            Letter::H(b) => {
                let b = b as usize;
                let mut h = m.h.clone();
                h[b] += 1;
                add_term(out, Mono { h, ..m.clone() }, c.clone());
                let mut wt = CycNum::zero();
                for &y in &m.ys {
                    wt += &self.pres.cartan.weights[b][y as usize];
                }
                add_term(out, m.clone(), c * &wt);
            }
            Letter::G(a, e) => {
                let mut ev = vec![0i64; self.na()];
                ev[a as usize] = e;
                let s = self.chi_word(&ev, &m.ys);
                let mut g = m.g.clone();
                g[a as usize] += e;
                self.norm_g(&mut g);
                add_term(out, Mono { g, ..m.clone() }, c * &s);
            }
            Letter::X(i) => {
                let q = &self.pres.q;
                let iu = i as usize;
                // x_i moved left through the x*-word
                let k = m.ys.len();
                let mut suffix = CycNum::one();
                for l in (0..k).rev() {
                    let y = m.ys[l];
                    if y == i {
                        let mut rest = m.ys.clone();
                        rest.remove(l);
                        let base = c * &suffix;
                        // c_0 term
                        self.push_ys(out, m, &m.g, &rest, &base * &self.pres.link.0)?;
                        // c_1 ḡ_i g_i term, moved left past y_1 … y_{l-1}
                        let mut e = self.pres.cartan.gbar[iu].clone();
                        for (a, v) in self.pres.cartan.g[iu].iter().enumerate() {
                            e[a] += v;
                        }
                        let s = self.chi_word(&e, &m.ys[..l]);
                        let mut g = m.g.clone();
                        for (a, v) in e.iter().enumerate() {
                            g[a] += v;
                        }
                        self.norm_g(&mut g);
                        self.push_ys(out, m, &g, &rest, &(&base * &self.pres.link.1) * &s)?;
                    }
                    suffix = &suffix * &q[iu][y as usize];
                }
                // x_i now stands left of the x*-word with coefficient `suffix`
                let coef = &(c * &suffix) * &self.chi_word(&m.g, &[i]);
                // H-monomial: h x_i = x_i Π (H_b + w_{b,i})^{n_b}
                let mut hterms: Vec<(Vec<u32>, CycNum)> = vec![(vec![0; self.nh()], CycNum::one())];
                for b in 0..self.nh() {
                    let nb = m.h[b];
                    let w = &self.pres.cartan.weights[b][iu];
                    let mut next = Vec::new();
                    for (hv, hc) in &hterms {
                        for kk in 0..=nb {
                            let s = &w.pow((nb - kk) as i64)? * &CycNum::from_int(binomial(nb, kk));
                            if s.is_zero() {
                                continue;
                            }
                            let mut hv2 = hv.clone();
                            hv2[b] = kk;
                            next.push((hv2, hc * &s));
                        }
                    }
                    hterms = next;
                }
                let mut w = m.xs.clone();
                w.push(i);
                let xnf = self.nf(&w);
                for (hv, hc) in &hterms {
                    for (b, k) in &xnf {
                        add_term(
                            out,
                            Mono { xs: b.clone(), g: m.g.clone(), h: hv.clone(), ys: m.ys.clone() },
                            &(&coef * hc) * k,
                        );
                    }
                }
            }
        }
        Ok(())
    }

    fn push_ys(&self, out: &mut Elem, m: &Mono, g: &[i64], ys: &[u8], c: CycNum) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        // ys is a sub-word of a basis word; renormalize in case it is not itself basic
        for (b, k) in self.nf(ys) {
            add_term(out, Mono { xs: m.xs.clone(), g: g.to_vec(), h: m.h.clone(), ys: b }, &c * &k);
        }
        Ok(())
    }

    pub fn mul_letter(&self, e: &Elem, l: &Letter) -> Result<Elem> {
        let mut out = Elem::new();
        for (m, c) in e {
            self.mono_times_letter(m, c, l, &mut out)?;
        }
        Ok(out)
    }

    pub fn mono_letters(&self, m: &Mono) -> Vec<Letter> {
        let mut v = lettered(&m.xs, Letter::X);
        v.extend(gl_letters(&m.g));
        for (b, &k) in m.h.iter().enumerate() {
            v.extend(std::iter::repeat_n(Letter::H(b as u8), k as usize));
        }
        v.extend(lettered(&m.ys, Letter::Xs));
        v
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        let mut out = Elem::new();
        for (m, c) in b {
            let mut t = a.clone();
            for l in self.mono_letters(m) {
                t = self.mul_letter(&t, &l)?;
            }
            for (k, v) in t {
                add_term(&mut out, k, &v * c);
            }
        }
        Ok(out)
    }

    pub fn word(&self, w: &[Letter]) -> Result<Elem> {
        let mut t = self.one();
        for l in w {
            t = self.mul_letter(&t, l)?;
        }
        Ok(t)
    }

    pub fn eval(&self, p: &NcPoly) -> Result<Elem> {
        let mut out = Elem::new();
        for (w, c) in p {
            for (k, v) in self.word(w)? {
                add_term(&mut out, k, &v * c);
            }
        }
        Ok(out)
    }

    pub fn scalar(&self, c: CycNum) -> Elem {
        let mut e = Elem::new();
        add_term(&mut e, self.unit_mono(), c);
        e
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = a.clone();
        for (k, v) in b {
            add_term(&mut out, k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, a: &Elem, c: &CycNum) -> Elem {
        let mut out = Elem::new();
        for (k, v) in a {
            add_term(&mut out, k.clone(), v * c);
        }
        out
    }

    fn gl_mono(&self, e: &[i64]) -> Mono {
        let mut g = e.to_vec();
        self.norm_g(&mut g);
        Mono { g, ..self.unit_mono() }
    }

    fn letter_mono(&self, l: &Letter) -> Result<Elem> {
        self.word(std::slice::from_ref(l))
    }

    /// Δ of a single letter, as a sum of tensors of elements.
    pub fn coproduct_letter(&self, l: &Letter) -> Result<Vec<(Elem, Elem)>> {
        let c = &self.pres.cartan;
        let one = self.one();
        let gel = |e: &[i64]| -> Elem { BTreeMap::from([(self.gl_mono(e), CycNum::one())]) };
        Ok(match l {
            Letter::X(i) => vec![(gel(&c.g[*i as usize]), self.letter_mono(l)?), (self.letter_mono(l)?, one)],
            Letter::Xs(i) => vec![(gel(&c.gbar[*i as usize]), self.letter_mono(l)?), (self.letter_mono(l)?, one)],
            Letter::G(_, _) => vec![(self.letter_mono(l)?, self.letter_mono(l)?)],
            Letter::H(_) => vec![(self.letter_mono(l)?, one.clone()), (one, self.letter_mono(l)?)],
        })
    }

    fn mul2(&self, a: &Elem2, parts: &[(Elem, Elem)]) -> Result<Elem2> {
        let mut out = Elem2::new();
        for ((m1, m2), c) in a {
            let l = BTreeMap::from([(m1.clone(), CycNum::one())]);
            let r = BTreeMap::from([(m2.clone(), CycNum::one())]);
            for (p1, p2) in parts {
                let left = self.mul(&l, p1)?;
                let right = self.mul(&r, p2)?;
                for (k1, v1) in &left {
                    for (k2, v2) in &right {
                        add_term(&mut out, (k1.clone(), k2.clone()), &(c * v1) * v2);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Δ(p) expanded multiplicatively and normal-ordered in U ⊗ U.
    pub fn coproduct(&self, p: &NcPoly) -> Result<Elem2> {
        let mut out = Elem2::new();
        for (w, c) in p {
            let mut t: Elem2 = BTreeMap::from([((self.unit_mono(), self.unit_mono()), c.clone())]);
            for l in w {
                t = self.mul2(&t, &self.coproduct_letter(l)?)?;
            }
            for (k, v) in t {
                add_term(&mut out, k, v);
            }
        }
        Ok(out)
    }

    pub fn counit_letter(l: &Letter) -> CycNum {
        match l {
            Letter::G(_, _) => CycNum::one(),
            _ => CycNum::zero(),
        }
    }

    pub fn counit(p: &NcPoly) -> CycNum {
        let mut acc = CycNum::zero();
        for (w, c) in p {
            let v = w.iter().fold(c.clone(), |a, l| &a * &Self::counit_letter(l));
            acc += &v;
        }
        acc
    }

    /// S on a letter: S(x_i) = −g_i^{-1} x_i, S(x*_i) = −ḡ_i^{-1} x*_i, S(K) = K^{-1}, S(H) = −H.
    pub fn antipode_letter(&self, l: &Letter) -> Result<Elem> {
        let c = &self.pres.cartan;
        let neg = |e: &[i64]| e.iter().map(|v| -v).collect::<Vec<_>>();
        Ok(match l {
            Letter::X(i) => {
                let mut w = gl_letters(&neg(&c.g[*i as usize]));
                w.push(l.clone());
                self.scale(&self.word(&w)?, &CycNum::from_int(-1))
            }
            Letter::Xs(i) => {
                let mut w = gl_letters(&neg(&c.gbar[*i as usize]));
                w.push(l.clone());
                self.scale(&self.word(&w)?, &CycNum::from_int(-1))
            }
            Letter::G(a, e) => self.word(&[Letter::G(*a, -e)])?,
            Letter::H(_) => self.scale(&self.letter_mono(l)?, &CycNum::from_int(-1)),
        })
    }

    /// Anti-multiplicative extension of S to an element.
    pub fn antipode(&self, e: &Elem) -> Result<Elem> {
        let mut out = Elem::new();
        for (m, c) in e {
            let mut t = self.one();
            for l in self.mono_letters(m).iter().rev() {
                t = self.mul(&t, &self.antipode_letter(l)?)?;
            }
            for (k, v) in t {
                add_term(&mut out, k, &v * c);
            }
        }
        Ok(out)
    }

    fn generators(&self) -> Vec<Letter> {
        let n = self.pres.rank() as u8;
        let mut v: Vec<Letter> = (0..n).map(Letter::X).collect();
        if self.pres.with_dual {
            v.extend((0..n).map(Letter::Xs));
        }
        v.extend((0..self.na() as u8).map(|a| Letter::G(a, 1)));
        v.extend((0..self.nh() as u8).map(Letter::H));
        v
    }

    /// m∘(S⊗id)∘Δ = ε = m∘(id⊗S)∘Δ on every generator.
    pub fn check_antipode(&self) -> Result<CheckReport> {
        let mut failures = Vec::new();
        let gens = self.generators();
        for l in &gens {
            let eps = self.scale(&self.one(), &Self::counit_letter(l));
            let mut left = Elem::new();
            let mut right = Elem::new();
            for (a, b) in self.coproduct_letter(l)? {
                left = self.add(&left, &self.mul(&self.antipode(&a)?, &b)?);
                right = self.add(&right, &self.mul(&a, &self.antipode(&b)?)?);
            }
            if left != eps || right != eps {
                failures.push(format!("antipode fails on {l}"));
            }
        }
        Ok(CheckReport::from(gens.len(), failures))
    }

    /// Every relation vanishes in the normal-form algebra, has counit 0, and
    /// its coproduct normal-orders to 0 in U ⊗ U (symbolic for rank ≤ 2).
    pub fn check_symbolic(&self) -> Result<CheckReport> {
        let rels = &self.pres.relations;
        let symbolic = self.pres.rank() <= 2;
        let failures: Vec<Vec<String>> = rels
            .par_iter()
            .map(|r| -> Result<Vec<String>> {
                let mut f = Vec::new();
                if !self.eval(&r.poly)?.is_empty() {
                    f.push(format!("{}: does not vanish in normal form", r.label));
                }
                if !Self::counit(&r.poly).is_zero() {
                    f.push(format!("{}: counit is nonzero", r.label));
                }
                if symbolic && !self.coproduct(&r.poly)?.is_empty() {
                    f.push(format!("{}: coproduct is not in the ideal", r.label));
                }
                Ok(f)
            })
            .collect::<Result<_>>()?;
        Ok(CheckReport::from(rels.len(), failures.into_iter().flatten().collect()))
    }

    /// Evaluates a polynomial on module matrices.
    pub fn act(rep: &Representation, p: &NcPoly) -> Result<Matrix<CycNum>> {
        let mut acc = Matrix::<CycNum>::zeros(rep.dim, rep.dim);
        for (w, c) in p {
            let mut m = Matrix::<CycNum>::identity(rep.dim);
            for l in w {
                let g = match l {
                    Letter::X(i) => rep.x.get(*i as usize).cloned(),
                    Letter::Xs(i) => rep.xs.get(*i as usize).cloned(),
                    Letter::H(b) => rep.primitives.get(*b as usize).cloned(),
                    Letter::G(a, e) => match rep.grouplikes.get(*a as usize) {
                        Some(k) => Some(if *e >= 0 { mat_pow(k, *e as u32) } else { mat_pow(&k.inverse()?, (-e) as u32) }),
                        None => None,
                    },
                }
                .ok_or_else(|| Error::InvalidArgument(format!("module {} has no matrix for {l}", rep.name)))?;
                m = m.mul(&g);
            }
            acc = acc.add(&m.scale(c));
        }
        Ok(acc)
    }

    /// Every relation annihilates every module of the family.
    pub fn check_modules(&self, family: &[Representation]) -> Result<CheckReport> {
        let failures: Vec<Option<String>> = family
            .par_iter()
            .map(|rep| -> Result<Option<String>> {
                for r in &self.pres.relations {
                    if !Self::act(rep, &r.poly)?.is_zero() {
                        return Ok(Some(format!("{} fails on module {}", r.label, rep.name)));
                    }
                }
                Ok(None)
            })
            .collect::<Result<_>>()?;
        Ok(CheckReport::from(family.len() * self.pres.relations.len(), failures.into_iter().flatten().collect()))
    }

    /// All normal-form monomials with group-like exponents in `window` (per infinite-order generator)
    /// and H-degree 0: the PBW basis slice used for dimension counts.
    pub fn pbw_basis(&self, window: std::ops::Range<i64>) -> Vec<Mono> {
        let xb = self.nichols.all_basis_words();
        let yb = if self.pres.with_dual { xb.clone() } else { vec![vec![]] };
        let mut gs: Vec<Vec<i64>> = vec![vec![]];
        for gl in &self.pres.cartan.grouplikes {
            let range: Vec<i64> = match gl.order {
                Some(m) => (0..m as i64).collect(),
                None => window.clone().collect(),
            };
            gs = gs.into_iter().flat_map(|v| range.iter().map(move |&k| [v.clone(), vec![k]].concat())).collect();
        }
        let mut out = Vec::new();
        for x in &xb {
            for g in &gs {
                for y in &yb {
                    out.push(Mono { xs: x.clone(), g: g.clone(), h: vec![0; self.nh()], ys: y.clone() });
                }
            }
        }
        out
    }
}

fn mat_pow(m: &Matrix<CycNum>, e: u32) -> Matrix<CycNum> {
    (0..e).fold(Matrix::identity(m.rows), |acc, _| acc.mul(m))
}

/// Cartan-only check (no skew-primitives).
pub fn cartan_only(cartan: CartanSpec) -> Result<HopfPresentation> {
    build_from_matrix("C", vec![], cartan, true, &NicholsConfig::default())
}

/// Convenience presets; q = e^{πi/p} throughout.
pub mod presets {
    use super::*;
    use crate::cyclotomic::rat;
    use crate::nichols::presets as np;

    pub fn q_of(p: u32) -> CycNum {
        CycNum::exp_pi_i(&rat(1, p as i64))
    }

    fn check_p(p: u32, min: u32) -> Result<()> {
        if p < min {
            invalid(format!("p must be at least {min}"))
        } else {
            Ok(())
        }
    }

    /// Cartan data for sl2: K with K x K^{-1} = q² x, optionally unrolled by H with [H, x] = 2x.
    pub fn sl2_cartan(p: u32, unrolled: bool) -> CartanSpec {
        let q = q_of(p);
        CartanSpec {
            grouplikes: vec![GroupLikeGen { name: "K".into(), order: if unrolled { None } else { Some(2 * p) } }],
            chi: vec![vec![&q * &q]],
            primitives: if unrolled { vec!["H".into()] } else { vec![] },
            weights: if unrolled { vec![vec![CycNum::from_int(2)]] } else { vec![] },
            g: vec![vec![1]],
            gbar: vec![vec![1]],
        }
    }

    /// u_q(sl2) with K of order 2p.
    pub fn uq_sl2(p: u32) -> Result<HopfPresentation> {
        check_p(p, 2)?;
        let mut pr = build_uq(&np::rank1(p)?, sl2_cartan(p, false), &NicholsConfig::default())?;
        pr.name = format!("u_q(sl2), p={p}");
        Ok(pr)
    }

    /// Unrolled u_q^H(sl2); K = q^H holds only on modules.
    pub fn uqh_sl2(p: u32) -> Result<HopfPresentation> {
        check_p(p, 2)?;
        let mut pr = build_uq(&np::rank1(p)?, sl2_cartan(p, true), &NicholsConfig::default())?;
        pr.name = format!("u_q^H(sl2), p={p}");
        Ok(pr)
    }

    /// Borel part u_q(sl2)^{≥0} as B(X) ⋊ C.
    pub fn borel_sl2(p: u32) -> Result<HopfPresentation> {
        check_p(p, 2)?;
        radford_biproduct(&np::rank1(p)?, sl2_cartan(p, false), &NicholsConfig::default())
    }

    /// U(S(p)): group-likes (−1)^F and K, primitive H, x of self-braiding q².
    pub fn usp(p: u32) -> Result<HopfPresentation> {
        check_p(p, 3)?;
        let q = q_of(p);
        let q2 = &q * &q;
        let cartan = CartanSpec {
            grouplikes: vec![
                GroupLikeGen { name: "(-1)^F".into(), order: Some(2) },
                GroupLikeGen { name: "K".into(), order: None },
            ],
            chi: vec![vec![CycNum::from_int(-1)], vec![-&q2]],
            primitives: vec!["H".into()],
            weights: vec![vec![CycNum::one()]],
            g: vec![vec![1, 1]],
            gbar: vec![vec![1, 1]],
        };
        let mut pr = build_from_matrix("U(S(p))", vec![vec![q2]], cartan, true, &NicholsConfig::default())?;
        pr.name = format!("U(S(p)), p={p}");
        Ok(pr)
    }

    /// u_q^B(gl(1|1)) with q = e^{πiħ}: group-likes (−1)^F and K = q^B, g = (−1)^F K,
    /// primitives A, B with [A, x] = −x, [B, x] = 0.
    pub fn ugl11(hbar: &Q) -> Result<HopfPresentation> {
        let cartan = CartanSpec {
            grouplikes: vec![
                GroupLikeGen { name: "(-1)^F".into(), order: Some(2) },
                GroupLikeGen { name: "K".into(), order: None },
            ],
            chi: vec![vec![CycNum::from_int(-1)], vec![CycNum::one()]],
            primitives: vec!["A".into(), "B".into()],
            weights: vec![vec![CycNum::from_int(-1)], vec![CycNum::zero()]],
            g: vec![vec![1, 1]],
            gbar: vec![vec![1, 1]],
        };
        let mut pr =
            build_from_matrix("u_q^B(gl(1|1))", vec![vec![CycNum::from_int(-1)]], cartan, true, &NicholsConfig::default())?;
        pr.name = format!("u_q^B(gl(1|1)), hbar={}", crate::cyclotomic::fmt_rational(hbar));
        Ok(pr)
    }

    pub fn by_name(name: &str, p: u32) -> Result<HopfPresentation> {
        match name {
            "uq-sl2" => uq_sl2(p),
            "uq-h-sl2" => uqh_sl2(p),
            "usp" => usp(p),
            "ugl11" => ugl11(&rat(1, p as i64)),
            "borel" => borel_sl2(p),
            other => invalid(format!("unknown preset {other:?}")),
        }
    }
}

/// Returns a copy of the presentation with a modified linking constant c_0 + c_1 ḡg.
pub fn with_linking(p: &HopfPresentation, c0: CycNum, c1: CycNum) -> Result<HopfPresentation> {
    let mut out = p.clone();
    out.link = (c0, c1);
    let nichols = QuantumGroup::new(p.clone())?.nichols;
    out.relations = standard_relations(&out, &nichols)?;
    Ok(out)
}

/// For Hopf algebras with a single K (sl2 type): verifies that
/// x*x − q²xx* − (1 − K²) = −(q − q^{-1}) K ([E,F] − (K − K^{-1})/(q − q^{-1}))
/// under x = E, x* = (q − q^{-1}) K F, using only EK = q^{-2}KE, FK = q²KF.
/// `sign` multiplies the linking constant (sign = −1 is the deliberately wrong variant).
pub fn sl2_substitution_identity(p: u32, sign: i64) -> bool {
    // polynomials in K^k · (word in E=0, F=1)
    type P = BTreeMap<(i64, Vec<u8>), CycNum>;
    let q = presets::q_of(p);
    let qi = q.inv().unwrap();
    let d = &q - &qi;
    // normal-order a product given as a list of factors (K-exponent, E/F letter or none)
    fn norm(q: &CycNum, factors: &[(i64, Option<u8>)], c: CycNum, out: &mut P) {
        let mut k = 0i64;
        let mut word = Vec::new();
        let mut coef = c;
        for &(e, l) in factors {
            // moving K^e left past the current word: E K = q^{-2} K E, F K = q^2 K F
            for &w in &word {
                let s = if w == 0 { -2 * e } else { 2 * e };
                coef = &coef * &q.pow(s).unwrap();
            }
            k += e;
            if let Some(l) = l {
                word.push(l);
            }
        }
        add_term(out, (k, word), coef);
    }
    let one = CycNum::one();
    let mut lhs = P::new();
    // x* x = d K F E
    norm(&q, &[(1, Some(1)), (0, Some(0))], d.clone(), &mut lhs);
    // − q² x x* = − q² d E K F
    norm(&q, &[(0, Some(0)), (1, Some(1))], -&(&(&q * &q) * &d), &mut lhs);
    // − sign (1 − K²)
    norm(&q, &[], CycNum::from_int(-sign), &mut lhs);
    norm(&q, &[(2, None)], CycNum::from_int(sign), &mut lhs);
    let mut rhs = P::new();
    // −d K (EF − FE) + K (K − K^{-1})
    norm(&q, &[(1, None), (0, Some(0)), (0, Some(1))], -&d, &mut rhs);
    norm(&q, &[(1, None), (0, Some(1)), (0, Some(0))], d.clone(), &mut rhs);
    norm(&q, &[(2, None)], one.clone(), &mut rhs);
    norm(&q, &[], -&one, &mut rhs);
    lhs == rhs
}

/// The same identity in the normal-form algebra: E = x, F = K^{-1} x* / (q − q^{-1})
/// satisfy [E, F] = (K − K^{-1})/(q − q^{-1}).
pub fn sl2_commutator_in(u: &QuantumGroup, p: u32) -> Result<bool> {
    let q = presets::q_of(p);
    let d = &q - &q.inv()?;
    let di = d.inv()?;
    let e = u.word(&[Letter::X(0)])?;
    let f = u.scale(&u.word(&[Letter::G(0, -1), Letter::Xs(0)])?, &di);
    let comm = u.add(&u.mul(&e, &f)?, &u.scale(&u.mul(&f, &e)?, &CycNum::from_int(-1)));
    let kk = u.add(&u.word(&[Letter::G(0, 1)])?, &u.scale(&u.word(&[Letter::G(0, -1)])?, &CycNum::from_int(-1)));
    Ok(comm == u.scale(&kk, &di))
}

/// gl(1|1): X = xK^{-1}, Y = x*/(q^{-1} − q) give XY + YX = (K − K^{-1})/(q − q^{-1}).
/// With `literal` the printed normalization Y = x*(q^{-1} − q) is used instead.
pub fn gl11_change_of_variables(hbar: &Q, literal: bool) -> Result<bool> {
    let u = QuantumGroup::new(presets::ugl11(hbar)?)?;
    let q = CycNum::exp_pi_i(hbar);
    let qi = q.inv()?;
    let s = &qi - &q;
    let ys = if literal { s.clone() } else { s.inv()? };
    // group-likes: 0 = (−1)^F, 1 = K
    let x = u.word(&[Letter::X(0), Letter::G(1, -1)])?;
    let y = u.scale(&u.word(&[Letter::Xs(0)])?, &ys);
    let lhs = u.add(&u.mul(&x, &y)?, &u.mul(&y, &x)?);
    let kk = u.add(&u.word(&[Letter::G(1, 1)])?, &u.scale(&u.word(&[Letter::G(1, -1)])?, &CycNum::from_int(-1)));
    let rhs = u.scale(&kk, &(&q - &qi).inv()?);
    Ok(lhs == rhs)
}

/// Coefficient of x ⊗ x in Δ(x)² for a rank-one presentation.
pub fn delta_x_squared_middle(u: &QuantumGroup) -> Result<CycNum> {
    let d = u.coproduct(&vec![(vec![Letter::X(0), Letter::X(0)], CycNum::one())])?;
    // collect every term whose legs carry one x each, regardless of group-likes
    let mut acc = CycNum::zero();
    for ((a, b), c) in &d {
        if a.xs.len() == 1 && b.xs.len() == 1 && a.ys.is_empty() && b.ys.is_empty() {
            acc += c;
        }
    }
    Ok(acc)
}

/// Projection B(X)⋊C → C (x ↦ 0) composed with the inclusion is the identity on C.
pub fn projection_splits(u: &QuantumGroup) -> Result<bool> {
    for a in 0..u.pres.cartan.grouplikes.len() as u8 {
        for e in [-1i64, 1, 2] {
            let el = u.word(&[Letter::G(a, e)])?;
            let projected: Elem = el.into_iter().filter(|(m, _)| m.xs.is_empty() && m.ys.is_empty()).collect();
            if projected != u.word(&[Letter::G(a, e)])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;
    use crate::cyclotomic::rat;

    fn qg(p: HopfPresentation) -> QuantumGroup {
        QuantumGroup::new(p).unwrap()
    }

    #[test]
    fn uq_relations_symbolic() {
        for p in [2u32, 3, 4] {
            for pres in [uq_sl2(p).unwrap(), uqh_sl2(p).unwrap()] {
                let u = qg(pres);
                let r = u.check_symbolic().unwrap();
                assert!(r.ok, "{:?}", r.failures);
                assert!(u.check_antipode().unwrap().ok);
            }
        }
    }

    #[test]
    fn perturbed_linking_fails() {
        let p = uq_sl2(3).unwrap();
        let bad = with_linking(&p, CycNum::one(), CycNum::from_int(-2)).unwrap();
        let r = qg(bad).check_symbolic().unwrap();
        assert!(!r.ok);
        assert!(r.failures.iter().any(|f| f.starts_with("linking")));
    }

    #[test]
    fn confluence_rank_one() {
        for p in [2u32, 3, 4] {
            let u = qg(uq_sl2(p).unwrap());
            // x* · x^p computed two ways
            let mut t = u.word(&[Letter::Xs(0)]).unwrap();
            for _ in 0..p {
                t = u.mul_letter(&t, &Letter::X(0)).unwrap();
            }
            assert!(t.is_empty(), "p={p}");
            let mut t = u.word(&[Letter::Xs(0); 1]).unwrap();
            for _ in 0..p - 1 {
                t = u.mul_letter(&t, &Letter::Xs(0)).unwrap();
            }
            assert!(u.mul_letter(&t, &Letter::Xs(0)).unwrap().is_empty());
            assert_eq!(u.pbw_basis(0..1).len(), (p * p * 2 * p) as usize);
            let uh = qg(uqh_sl2(p).unwrap());
            assert_eq!(uh.pbw_basis(-2..3).len(), (p * p * 5) as usize);
        }
    }

    #[test]
    fn associativity_on_monomials() {
        let u = qg(uqh_sl2(3).unwrap());
        let basis = u.pbw_basis(-1..2);
        let pick: Vec<&Mono> = basis.iter().step_by(7).take(6).collect();
        let el = |m: &Mono| BTreeMap::from([(m.clone(), CycNum::one())]);
        let h = u.word(&[Letter::H(0)]).unwrap();
        for a in &pick {
            for b in &pick {
                let ab = u.mul(&el(a), &el(b)).unwrap();
                let left = u.mul(&ab, &h).unwrap();
                let right = u.mul(&el(a), &u.mul(&el(b), &h).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn sl2_substitution() {
        for p in [2u32, 3, 4] {
            assert!(sl2_substitution_identity(p, 1));
            assert!(!sl2_substitution_identity(p, -1));
            let u = qg(uq_sl2(p).unwrap());
            assert!(sl2_commutator_in(&u, p).unwrap());
            let flipped = with_linking(&u.pres, CycNum::from_int(-1), CycNum::one()).unwrap();
            assert!(!sl2_commutator_in(&qg(flipped), p).unwrap());
        }
    }

    #[test]
    fn usp_presentation() {
        assert!(usp(2).is_err());
        let pr = usp(3).unwrap();
        let labels: Vec<&str> = pr.relations.iter().map(|r| r.label.as_str()).collect();
        assert!(labels.contains(&"nichols:x[000]"));
        assert!(labels.contains(&"nichols:x*[000]"));
        assert!(labels.contains(&"linking:1,1"));
        for r in &pr.relations {
            assert!(QuantumGroup::counit(&r.poly).is_zero(), "{}", r.label);
        }
        let j = serde_json::to_string(&pr).unwrap();
        let back: HopfPresentation = serde_json::from_str(&j).unwrap();
        assert_eq!(back, pr);
        let u = qg(pr);
        assert!(u.check_symbolic().unwrap().ok);
        assert!(u.check_antipode().unwrap().ok);
        // K x K^{-1} = −q² x
        let q = q_of(3);
        let kx = u.word(&[Letter::G(1, 1), Letter::X(0), Letter::G(1, -1)]).unwrap();
        assert_eq!(kx, u.scale(&u.word(&[Letter::X(0)]).unwrap(), &-&(&q * &q)));
    }

    #[test]
    fn usp_displayed_ordering_is_not_a_coideal() {
        // x x* − q² x* x = 1 − K² (printed order) against the printed coproducts
        let u = qg(usp(3).unwrap());
        let q = q_of(3);
        let poly: NcPoly = vec![
            (vec![Letter::X(0), Letter::Xs(0)], CycNum::one()),
            (vec![Letter::Xs(0), Letter::X(0)], -&(&q * &q)),
            (vec![], -CycNum::one()),
            (vec![Letter::G(1, 2)], CycNum::one()),
        ];
        assert!(!u.coproduct(&poly).unwrap().is_empty());
    }

    #[test]
    fn gl11() {
        for h in [rat(1, 3), rat(1, 5), rat(2, 7)] {
            let pr = ugl11(&h).unwrap();
            for r in &pr.relations {
                assert!(QuantumGroup::counit(&r.poly).is_zero());
            }
            let u = qg(pr);
            assert!(u.check_symbolic().unwrap().ok);
            assert!(u.check_antipode().unwrap().ok);
            assert!(gl11_change_of_variables(&h, false).unwrap());
            assert!(!gl11_change_of_variables(&h, true).unwrap());
            assert!(delta_x_squared_middle(&u).unwrap().is_zero());
            // x x* + x* x = 1 − g²
            let lhs = u.eval(&vec![(vec![Letter::X(0), Letter::Xs(0)], CycNum::one()), (vec![Letter::Xs(0), Letter::X(0)], CycNum::one())]).unwrap();
            let rhs = u.eval(&vec![(vec![], CycNum::one()), (vec![Letter::G(1, 2)], CycNum::from_int(-1))]).unwrap();
            assert_eq!(lhs, rhs);
        }
        // the printed normalization is off by (q^{-1} − q)², which is never 1 for real ħ;
        // at ħ = 1/6 it is −1
        assert!(!gl11_change_of_variables(&rat(1, 6), true).unwrap());
    }

    #[test]
    fn biproduct_and_cartan_only() {
        let b = borel_sl2(3).unwrap();
        assert!(!b.with_dual);
        assert!(b.relations.iter().all(|r| !r.label.starts_with("linking")));
        let u = qg(b);
        assert!(u.check_symbolic().unwrap().ok);
        assert!(u.check_antipode().unwrap().ok);
        assert!(projection_splits(&u).unwrap());
        let c = cartan_only(CartanSpec {
            grouplikes: vec![GroupLikeGen { name: "K".into(), order: Some(4) }],
            chi: vec![vec![]],
            primitives: vec![],
            weights: vec![],
            g: vec![],
            gbar: vec![],
        })
        .unwrap();
        assert!(qg(c).check_symbolic().unwrap().ok);
    }

    #[test]
    fn missing_group_like_rejected() {
        let mut c = sl2_cartan(3, false);
        c.chi = vec![vec![q_of(3)]];
        let e = build_uq(&crate::nichols::presets::rank1(3).unwrap(), c, &NicholsConfig::default());
        assert!(matches!(e, Err(Error::InvalidArgument(m)) if m.contains("g_0")));
    }

    #[test]
    fn graded_dimension_factorizes() {
        let u = qg(uq_sl2(3).unwrap());
        let basis = u.pbw_basis(0..1);
        for a in 0..3 {
            for c in 0..3 {
                let n = basis.iter().filter(|m| m.xs.len() == a && m.ys.len() == c).count();
                assert_eq!(n, u.nichols().hilbert[a] * u.nichols().hilbert[c] * 6);
            }
        }
    }
}

//! Nichols algebras of diagonal type, degree by degree.
//!
//! B(X)_n is the image of the quantum symmetrizer S_n on X^{⊗n}. Dimensions
//! are computed with the factorization S_n = (S_{n-1} ⊗ id) ∘ T_n where
//! T_n = Σ_k c_{n-1} ⋯ c_k moves the k-th letter to the end; hence
//! ker S_n = ker((π_{n-1} ⊗ id) ∘ T_n) with π the quotient map, and only
//! words (basis of B_{n-1})·x_j need to be examined.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use rayon::prelude::*;

use crate::cyclotomic::{int, rat, CycNum};
use crate::error::{Error, Result};
use crate::graded_braid::{Bicharacter, BraidedObject, Degree};
use crate::linalg::{Coordinates, Matrix, RowSpace};

pub type Word = Vec<u8>;
pub type Multi = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NicholsConfig {
    pub max_degree: u32,
    pub max_words: usize,
}

impl Default for NicholsConfig {
    fn default() -> Self {
        NicholsConfig { max_degree: 8, max_words: 5000 }
    }
}

pub fn multidegree(w: &[u8], rank: usize) -> Multi {
    let mut d = vec![0u32; rank];
    for &l in w {
        d[l as usize] += 1;
    }
    d
}

/// All words of the given multidegree, lexicographically ordered.
pub fn words_of(d: &[u32]) -> Vec<Word> {
    fn go(d: &mut Vec<u32>, cur: &mut Word, out: &mut Vec<Word>) {
        if d.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for j in 0..d.len() {
            if d[j] > 0 {
                d[j] -= 1;
                cur.push(j as u8);
                go(d, cur, out);
                cur.pop();
                d[j] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut d.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Multidegrees in N^r of total degree n, lexicographically descending in the first slot.
pub fn multidegrees(r: usize, n: u32) -> Vec<Multi> {
    if r == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (0..=n).rev() {
        for mut rest in multidegrees(r - 1, n - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Scalar picked up when braiding letters of `a` past letters of `b`: Π q[s][t].
pub fn braid_scalar(q: &[Vec<CycNum>], a: &[u8], b: &[u8]) -> CycNum {
    let mut acc = CycNum::one();
    for &s in a {
        for &t in b {
            acc = &acc * &q[s as usize][t as usize];
        }
    }
    acc
}

fn all_words(r: usize, n: usize) -> Vec<Word> {
    if n == 0 {
        return vec![vec![]];
    }
    (0..n).map(|_| 0..r as u8).multi_cartesian_product().collect()
}

/// Lexicographically least reduced word of every permutation of n letters,
/// in the order produced by `itertools::permutations`.
fn reduced_words(n: usize) -> Arc<Vec<Vec<usize>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Vec<usize>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let words: Vec<Vec<usize>> = (0..n)
        .permutations(n)
        .map(|perm| {
            let mut pos = vec![0usize; n];
            for (i, &v) in perm.iter().enumerate() {
                pos[v] = i;
            }
            let mut word = Vec::new();
            // peel the smallest left descent: w = s_i w'
            while let Some(i) = (0..n.saturating_sub(1)).find(|&i| pos[i] > pos[i + 1]) {
                word.push(i);
                pos.swap(i, i + 1);
            }
            word
        })
        .collect();
    let words = Arc::new(words);
    cache.lock().unwrap().insert(n, words.clone());
    words
}

fn apply_reduced(q: &[Vec<CycNum>], word: &[usize], w: &[u8]) -> (CycNum, Word) {
    let mut cur = w.to_vec();
    let mut c = CycNum::one();
    for &i in word.iter().rev() {
        c = &c * &q[cur[i] as usize][cur[i + 1] as usize];
        cur.swap(i, i + 1);
    }
    (c, cur)
}

fn word_index(w: &[u8], r: usize) -> usize {
    w.iter().fold(0, |acc, &l| acc * r + l as usize)
}

/// Brute-force S_n = Σ_w T_w on the full word basis (lexicographic order);
/// column j is S_n applied to the j-th word.
pub fn quantum_symmetrizer(x: &BraidedObject, n: usize, cfg: &NicholsConfig) -> Result<Matrix<CycNum>> {
    let q = x.braid_matrix()?;
    symmetrizer_from_matrix(&q, n, cfg)
}

pub fn symmetrizer_from_matrix(q: &[Vec<CycNum>], n: usize, cfg: &NicholsConfig) -> Result<Matrix<CycNum>> {
    let r = q.len();
    let size = r.checked_pow(n as u32).unwrap_or(usize::MAX);
    if n as u32 > cfg.max_degree || size > cfg.max_words {
        return Err(Error::Resource(format!(
            "symmetrizer in degree {n} would be a {size}x{size} matrix (cutoff: degree {}, {} words)",
            cfg.max_degree, cfg.max_words
        )));
    }
    let words = all_words(r, n);
    let red = reduced_words(n);
    let mut m = Matrix::<CycNum>::zeros(size, size);
    for (j, w) in words.iter().enumerate() {
        for rw in red.iter() {
            let (c, out) = apply_reduced(q, rw, w);
            let i = word_index(&out, r);
            let v = m.get(i, j) + &c;
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// S_n restricted to one multidegree via the recursive factorization (memoised).
/// Columns/rows indexed by `words_of(d)`.
pub fn symmetrizer_block(q: &[Vec<CycNum>], d: &[u32]) -> Matrix<CycNum> {
    fn sym(q: &[Vec<CycNum>], w: &[u8], memo: &mut HashMap<Word, BTreeMap<Word, CycNum>>) -> BTreeMap<Word, CycNum> {
        if w.len() <= 1 {
            return BTreeMap::from([(w.to_vec(), CycNum::one())]);
        }
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let n = w.len();
        let mut out: BTreeMap<Word, CycNum> = BTreeMap::new();
        for k in 0..n {
            let c = braid_scalar(q, &w[k..=k], &w[k + 1..]);
            let mut rest = w.to_vec();
            let l = rest.remove(k);
            for (mut u, a) in sym(q, &rest, memo) {
                u.push(l);
                let e = out.entry(u).or_insert_with(CycNum::zero);
                *e += &(&a * &c);
            }
        }
        out.retain(|_, v| !v.is_zero());
        memo.insert(w.to_vec(), out.clone());
        out
    }
    let words = words_of(d);
    let idx: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut memo = HashMap::new();
    let mut m = Matrix::zeros(words.len(), words.len());
    for (j, w) in words.iter().enumerate() {
        for (u, c) in sym(q, w, &mut memo) {
            m.set(idx[&u], j, c);
        }
    }
    m
}

/// The quantum shuffle product u ⋆ x_j: insert x_j at every position,
/// braiding it leftwards past the letters it jumps over.
pub fn shuffle_letter(q: &[Vec<CycNum>], v: &BTreeMap<Word, CycNum>, j: u8) -> BTreeMap<Word, CycNum> {
    let mut out: BTreeMap<Word, CycNum> = BTreeMap::new();
    for (u, c) in v {
        let m = u.len();
        let mut factor = CycNum::one();
        for k in (0..=m).rev() {
            if k < m {
                factor = &factor * &q[u[k] as usize][j as usize];
            }
            let mut w = u.clone();
            w.insert(k, j);
            let e = out.entry(w).or_insert_with(CycNum::zero);
            *e += &(c * &factor);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// x_{w_1} ⋆ x_{w_2} ⋆ ⋯ in the quantum shuffle algebra.
pub fn shuffle_word(q: &[Vec<CycNum>], w: &[u8]) -> BTreeMap<Word, CycNum> {
    let mut v = BTreeMap::from([(Vec::new(), CycNum::one())]);
    for &j in w {
        v = shuffle_letter(q, &v, j);
    }
    v
}

/// Dimension of the subalgebra of the shuffle algebra generated by X, in multidegree d.
pub fn shuffle_rank(q: &[Vec<CycNum>], d: &[u32]) -> usize {
    let words = words_of(d);
    let idx: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut space = RowSpace::new(words.len());
    for w in &words {
        let mut v = vec![CycNum::zero(); words.len()];
        for (u, c) in shuffle_word(q, w) {
            v[idx[&u]] = c;
        }
        space.insert(&v);
    }
    space.rank()
}

#[derive(Clone, Debug)]
pub struct Component {
    pub multidegree: Multi,
    pub basis: Vec<Word>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A word combination with cyclotomic coefficients.
pub type Element = Vec<(Word, CycNum)>;

/// Truncated graded quotient of T(X): per-multidegree bases and reductions.
#[derive(Clone, Debug)]
pub struct NicholsData {
    q: Vec<Vec<CycNum>>,
    pub max_degree: u32,
    pub components: BTreeMap<Multi, Component>,
    pub hilbert: Vec<usize>,
    reduced: HashMap<Word, Vec<CycNum>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TotalDimension {
    Finite(u64),
    AtLeast(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnrolledReport {
    pub ok: bool,
    pub witness: Option<(Multi, Multi, Multi)>,
    /// the support may continue beyond the computed range
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebraReport {
    pub ok: bool,
    pub pairs_checked: usize,
    pub witness: Option<(Word, Word)>,
}

type Tensor = BTreeMap<(Word, Word), CycNum>;

fn add_to(t: &mut Tensor, k: (Word, Word), c: CycNum) {
    if c.is_zero() {
        return;
    }
    match t.entry(k) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl NicholsData {
    pub fn compute(x: &BraidedObject, cfg: &NicholsConfig) -> Result<NicholsData> {
        NicholsData::from_matrix(x.braid_matrix()?, cfg)
    }

    pub fn from_matrix(q: Vec<Vec<CycNum>>, cfg: &NicholsConfig) -> Result<NicholsData> {
        let r = q.len();
        if r > u8::MAX as usize {
            return Err(Error::Unsupported("more than 255 generators".into()));
        }
        let mut data = NicholsData {
            q,
            max_degree: cfg.max_degree,
            components: BTreeMap::new(),
            hilbert: vec![1],
            reduced: HashMap::new(),
        };
        data.components.insert(vec![0; r], Component { multidegree: vec![0; r], basis: vec![vec![]] });
        data.reduced.insert(vec![], vec![CycNum::one()]);
        for n in 1..=cfg.max_degree {
            if data.hilbert.iter().rev().take(1).all(|&h| h == 0) {
                // generated in degree one: nothing survives past a zero degree
                data.hilbert.push(0);
                continue;
            }
            let layer: Vec<Multi> = multidegrees(r, n)
                .into_iter()
                .filter(|d| (0..r).any(|j| d[j] > 0 && data.components.contains_key(&minus(d, j))))
                .collect();
            let words: usize = layer.iter().map(|d| words_of(d).len()).sum();
            if words > cfg.max_words {
                return Err(Error::Resource(format!(
                    "degree {n} needs {words} words (cutoff {})",
                    cfg.max_words
                )));
            }
            let results: Vec<Result<Option<(Component, Vec<(Word, Vec<CycNum>)>)>>> =
                layer.par_iter().map(|d| data.component(d)).collect();
            let mut total = 0;
            for res in results {
                if let Some((c, red)) = res? {
                    total += c.dim();
                    data.components.insert(c.multidegree.clone(), c);
                    data.reduced.extend(red);
                }
            }
            data.hilbert.push(total);
        }
        Ok(data)
    }

    /// φ(w) = (π ⊗ id) T(w) as a flat vector over ⊕_j B_{d-e_j}.
    fn phi(&self, w: &[u8], offsets: &[Option<usize>], len: usize) -> Vec<CycNum> {
        let mut v = vec![CycNum::zero(); len];
        let n = w.len();
        for k in 0..n {
            let j = w[k] as usize;
            let Some(off) = offsets[j] else { continue };
            let mut rest = w.to_vec();
            rest.remove(k);
            let Some(red) = self.reduced.get(&rest) else { continue };
            if red.iter().all(|c| c.is_zero()) {
                continue;
            }
            let c = braid_scalar(&self.q, &w[k..=k], &w[k + 1..]);
            for (i, a) in red.iter().enumerate() {
                if !a.is_zero() {
                    v[off + i] += &(a * &c);
                }
            }
        }
        v
    }

    #[allow(clippy::type_complexity)]
    fn component(&self, d: &[u32]) -> Result<Option<(Component, Vec<(Word, Vec<CycNum>)>)>> {
        let r = self.q.len();
        let mut offsets = vec![None; r];
        let mut len = 0;
        let mut candidates = Vec::new();
        for j in 0..r {
            if d[j] == 0 {
                continue;
            }
            if let Some(c) = self.components.get(&minus(d, j)) {
                offsets[j] = Some(len);
                len += c.dim();
                candidates.extend(c.basis.iter().map(|b| {
                    let mut w = b.clone();
                    w.push(j as u8);
                    w
                }));
            }
        }
        candidates.sort();
        let mut space = RowSpace::new(len);
        let mut basis = Vec::new();
        let mut images = Vec::new();
        for w in candidates {
            let v = self.phi(&w, &offsets, len);
            if space.insert(&v) {
                basis.push(w);
                images.push(v);
            }
        }
        if basis.is_empty() {
            return Ok(None);
        }
        let coords = Coordinates::new(&images)?;
        let mut red = Vec::new();
        for w in words_of(d) {
            let v = self.phi(&w, &offsets, len);
            let c = coords
                .coords(&v)
                .ok_or_else(|| Error::Degenerate(format!("word {w:?} escaped the symmetrizer image")))?;
            red.push((w, c));
        }
        Ok(Some((Component { multidegree: d.to_vec(), basis }, red)))
    }

    /// Quotient of T(X) by the two-sided ideal generated by the given words.
    /// Used to exhibit ideals that are not coideals.
    pub fn monomial_quotient(q: Vec<Vec<CycNum>>, forbidden: &[Word], max_degree: u32) -> NicholsData {
        let r = q.len();
        let mut data =
            NicholsData { q, max_degree, components: BTreeMap::new(), hilbert: Vec::new(), reduced: HashMap::new() };
        for n in 0..=max_degree {
            let mut total = 0;
            for d in multidegrees(r, n) {
                let words = words_of(&d);
                let basis: Vec<Word> = words
                    .iter()
                    .filter(|w| !forbidden.iter().any(|f| contains_subword(w, f)))
                    .cloned()
                    .collect();
                if basis.is_empty() {
                    continue;
                }
                for w in &words {
                    let v = basis
                        .iter()
                        .map(|b| if b == w { CycNum::one() } else { CycNum::zero() })
                        .collect();
                    data.reduced.insert(w.clone(), v);
                }
                total += basis.len();
                data.components.insert(d.clone(), Component { multidegree: d, basis });
            }
            data.hilbert.push(total);
        }
        data
    }

    pub fn braid_matrix(&self) -> &[Vec<CycNum>] {
        &self.q
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    pub fn dim(&self, d: &[u32]) -> usize {
        self.components.get(d).map_or(0, |c| c.dim())
    }

    pub fn basis(&self, d: &[u32]) -> &[Word] {
        self.components.get(d).map_or(&[], |c| &c.basis)
    }

    pub fn all_basis_words(&self) -> Vec<Word> {
        self.components.values().flat_map(|c| c.basis.iter().cloned()).collect()
    }

    /// True once three consecutive total degrees vanish (heuristic; for
    /// algebras generated in degree one any zero degree already suffices).
    pub fn is_finite(&self) -> bool {
        self.hilbert.windows(3).any(|w| w.iter().all(|&h| h == 0))
    }

    pub fn total_dimension(&self) -> TotalDimension {
        let s: u64 = self.hilbert.iter().map(|&h| h as u64).sum();
        if self.is_finite() {
            TotalDimension::Finite(s)
        } else {
            TotalDimension::AtLeast(s)
        }
    }

    /// Coordinates of a word on the basis of its multidegree (empty when that component is zero).
    pub fn reduce_word(&self, w: &[u8]) -> Result<Vec<CycNum>> {
        if w.len() as u32 > self.max_degree {
            // a vanishing degree forces every higher degree to vanish
            if self.hilbert.iter().skip(1).any(|&h| h == 0) {
                return Ok(vec![]);
            }
            return Err(Error::InvalidArgument(format!("word of degree {} beyond computed range {}", w.len(), self.max_degree)));
        }
        Ok(self.reduced.get(w).cloned().unwrap_or_default())
    }

    /// Normal form of a word as a combination of basis words.
    pub fn normal_form(&self, w: &[u8]) -> Result<Element> {
        let c = self.reduce_word(w)?;
        let d = multidegree(w, self.rank());
        Ok(self.basis(&d).iter().cloned().zip(c).filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Kernel basis in multidegree d: w − Σ π(w)_b b for every non-basis word.
    pub fn relations(&self, d: &[u32]) -> Result<Vec<Element>> {
        let basis = self.basis(d);
        let mut out = Vec::new();
        for w in words_of(d) {
            if basis.contains(&w) {
                continue;
            }
            let mut rel = vec![(w.clone(), CycNum::one())];
            for (b, c) in basis.iter().zip(self.reduce_word(&w)?) {
                if !c.is_zero() {
                    rel.push((b.clone(), -c));
                }
            }
            out.push(rel);
        }
        Ok(out)
    }

    /// Relations not generated by relations of lower total degree.
    pub fn minimal_relations(&self) -> Result<Vec<Element>> {
        let r = self.rank();
        let mut out = Vec::new();
        for n in 2..=self.max_degree {
            for d in multidegrees(r, n) {
                // only multidegrees directly above a nonzero component can carry new generators
                if !(0..r).any(|j| d[j] > 0 && self.components.contains_key(&minus(&d, j))) {
                    continue;
                }
                let words = words_of(&d);
                let idx: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
                let dense = |e: &Element| {
                    let mut v = vec![CycNum::zero(); words.len()];
                    for (w, c) in e {
                        v[idx[w]] += c;
                    }
                    v
                };
                let mut space = RowSpace::new(words.len());
                for j in 0..r {
                    if d[j] == 0 {
                        continue;
                    }
                    for rel in self.relations(&minus(&d, j))? {
                        let right: Element = rel.iter().map(|(w, c)| (cat(w, &[j as u8]), c.clone())).collect();
                        let left: Element = rel.iter().map(|(w, c)| (cat(&[j as u8], w), c.clone())).collect();
                        space.insert(&dense(&right));
                        space.insert(&dense(&left));
                    }
                }
                for rel in self.relations(&d)? {
                    if space.insert(&dense(&rel)) {
                        out.push(rel);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_range(&self, n: usize) -> Result<()> {
        if n as u32 > self.max_degree {
            Err(Error::InvalidArgument(format!("degree {n} beyond computed range {}", self.max_degree)))
        } else {
            Ok(())
        }
    }

    /// Δ of a word in T(X) ⊗ T(X), using Δ(w x_j) = Δ(w)(x_j ⊗ 1 + 1 ⊗ x_j).
    pub fn tensor_coproduct(&self, w: &[u8]) -> Tensor {
        let mut t: Tensor = BTreeMap::from([((vec![], vec![]), CycNum::one())]);
        for &j in w {
            let mut next = Tensor::new();
            for ((a, b), c) in &t {
                let s = braid_scalar(&self.q, b, &[j]);
                add_to(&mut next, (cat(a, &[j]), b.clone()), c * &s);
                add_to(&mut next, (a.clone(), cat(b, &[j])), c.clone());
            }
            t = next;
        }
        t
    }

    fn reduce_tensor(&self, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::new();
        for ((a, b), c) in t {
            let ra = self.normal_form(a)?;
            if ra.is_empty() {
                continue;
            }
            let rb = self.normal_form(b)?;
            for (ba, ca) in &ra {
                for (bb, cb) in &rb {
                    add_to(&mut out, (ba.clone(), bb.clone()), &(c * ca) * cb);
                }
            }
        }
        Ok(out)
    }

    /// Δ of a basis element of B(X), in (basis ⊗ basis) coordinates.
    pub fn coproduct(&self, w: &[u8]) -> Result<Tensor> {
        self.check_range(w.len())?;
        self.reduce_tensor(&self.tensor_coproduct(w))
    }

    /// The (k, n−k) component of Δ(w), sorted.
    pub fn braided_coproduct(&self, w: &[u8], k: usize) -> Result<Vec<((Word, Word), CycNum)>> {
        if k > w.len() {
            return Err(Error::InvalidArgument(format!("split {k} exceeds degree {}", w.len())));
        }
        Ok(self.coproduct(w)?.into_iter().filter(|((a, _), _)| a.len() == k).collect())
    }

    pub fn counit(&self, w: &[u8]) -> CycNum {
        if w.is_empty() {
            CycNum::one()
        } else {
            CycNum::zero()
        }
    }

    /// Δ∘m = (m⊗m)(id⊗c⊗id)(Δ⊗Δ) on all basis pairs of total degree ≤ max_degree.
    pub fn check_bialgebra_axiom(&self, max_degree: u32) -> Result<BialgebraReport> {
        let bound = max_degree.min(self.max_degree) as usize;
        let basis = self.all_basis_words();
        let pairs: Vec<(Word, Word)> = basis
            .iter()
            .cartesian_product(basis.iter())
            .filter(|(u, v)| u.len() + v.len() <= bound)
            .map(|(u, v)| (u.clone(), v.clone()))
            .collect();
        let deltas: HashMap<Word, Tensor> =
            basis.par_iter().filter(|b| b.len() <= bound).map(|b| Ok((b.clone(), self.coproduct(b)?))).collect::<Result<_>>()?;
        let failures: Vec<Option<(Word, Word)>> = pairs
            .par_iter()
            .map(|(u, v)| -> Result<Option<(Word, Word)>> {
                let mut lhs = Tensor::new();
                for (b, c) in self.normal_form(&cat(u, v))? {
                    for (k, x) in &deltas[&b] {
                        add_to(&mut lhs, k.clone(), &c * x);
                    }
                }
                let mut rhs = Tensor::new();
                for ((a1, a2), c) in &deltas[u] {
                    for ((b1, b2), d) in &deltas[v] {
                        let s = braid_scalar(&self.q, a2, b1);
                        add_to(&mut rhs, (cat(a1, b1), cat(a2, b2)), &(c * d) * &s);
                    }
                }
                let rhs = self.reduce_tensor(&rhs)?;
                Ok(if lhs == rhs { None } else { Some((u.clone(), v.clone())) })
            })
            .collect::<Result<_>>()?;
        let witness = failures.into_iter().flatten().next();
        Ok(BialgebraReport { ok: witness.is_none(), pairs_checked: pairs.len(), witness })
    }

    /// ᾱ + β̄ = γ̄ in Γ must force α + β = γ on the computed support.
    pub fn is_sufficiently_unrolled(&self, x: &BraidedObject) -> UnrolledReport {
        let support: Vec<&Multi> = self.components.keys().collect();
        let g = x.bichar.group();
        let degs: HashMap<&Multi, Degree> = support.iter().map(|m| (*m, x.degree_of(m))).collect();
        let mut witness = None;
        'outer: for a in &support {
            for b in &support {
                let s = g.add(&degs[a], &degs[b]);
                for c in &support {
                    if degs[c] == s && a.iter().zip(b.iter()).map(|(x, y)| x + y).collect::<Vec<_>>() != **c {
                        witness = Some(((*a).clone(), (*b).clone(), (*c).clone()));
                        break 'outer;
                    }
                }
            }
        }
        UnrolledReport { ok: witness.is_none(), witness, truncated: !self.is_finite() }
    }
}

fn minus(d: &[u32], j: usize) -> Multi {
    let mut e = d.to_vec();
    e[j] -= 1;
    e
}

fn cat(a: &[u8], b: &[u8]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}

fn contains_subword(w: &[u8], f: &[u8]) -> bool {
    !f.is_empty() && f.len() <= w.len() && w.windows(f.len()).any(|s| s == f)
}

pub fn total_dimension(x: &BraidedObject, bound: u32) -> Result<TotalDimension> {
    let cfg = NicholsConfig { max_degree: bound, ..NicholsConfig::default() };
    Ok(NicholsData::compute(x, &cfg)?.total_dimension())
}

/// Shipped braidings; q = e^{πi/p} unless stated.
pub mod presets {
    use super::*;
    use crate::cyclotomic::Q;

    fn free_object(form: Vec<Vec<Q>>) -> Result<BraidedObject> {
        let n = form.len();
        let b = Bicharacter::from_form(&form)?;
        let g = b.group().clone();
        let degs = (0..n)
            .map(|i| g.degree((0..n).map(|j| int((i == j) as i64)).collect(), vec![]))
            .collect::<Result<Vec<_>>>()?;
        BraidedObject::new(b, degs)
    }

    /// One generator with q_11 = e^{πi t}.
    pub fn rank1_exponent(t: Q) -> Result<BraidedObject> {
        free_object(vec![vec![t]])
    }

    /// One generator with q_11 = ζ_N (N ≥ 1; N = 1 gives q_11 = 1).
    pub fn rank1(n: u32) -> Result<BraidedObject> {
        if n == 0 {
            return Err(Error::InvalidArgument("order must be positive".into()));
        }
        rank1_exponent(rat(2, n as i64))
    }

    /// Cartan type A_2 with q = e^{πi/p}: q_ii = q², q_12 = q_21 = q^{-1}.
    pub fn a2(p: u32) -> Result<BraidedObject> {
        let p = p as i64;
        free_object(vec![vec![rat(2, p), rat(-1, p)], vec![rat(-1, p), rat(2, p)]])
    }

    /// Parabolic example n = 2: [[q², q^{-1}], [q^{-1}, −1]].
    pub fn parabolic2(p: u32) -> Result<BraidedObject> {
        let p = p as i64;
        free_object(vec![vec![rat(2, p), rat(-1, p)], vec![rat(-1, p), int(1)]])
    }

    /// Two fermionic lines: q_ii = −1, q_12 q_21 = 1.
    pub fn fermions() -> Result<BraidedObject> {
        free_object(vec![vec![int(1), int(0)], vec![int(0), int(1)]])
    }

    /// Rank one over the torsion group Z_m with x in degree 1 and q_11 = e^{πi a}.
    pub fn rank1_torsion(m: u32, a: Q) -> Result<BraidedObject> {
        let g = crate::graded_braid::GradingGroup::cyclic(m)?;
        let b = Bicharacter::new(g.clone(), vec![vec![a]])?;
        let d = g.degree(vec![], vec![1])?;
        BraidedObject::new(b, vec![d])
    }

    pub fn by_name(name: &str, p: u32) -> Result<BraidedObject> {
        match name {
            "rank1" => rank1(p),
            "sl2" => rank1(p),
            "a2" | "A2" => a2(p),
            "parabolic" | "parabolic2" => parabolic2(p),
            "fermions" => fermions(),
            other => Err(Error::InvalidArgument(format!("unknown preset {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;
    use crate::cyclotomic::{gauss_binomial, q_factorial, q_int};

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k).unwrap()
    }

    fn data(x: &BraidedObject, deg: u32) -> NicholsData {
        NicholsData::compute(x, &NicholsConfig { max_degree: deg, max_words: 5000 }).unwrap()
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(words_of(&[1, 1]), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(words_of(&[2, 1]).len(), 3);
        assert_eq!(multidegrees(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(reduced_words(3).len(), 6);
        assert_eq!(reduced_words(4).iter().map(|w| w.len()).sum::<usize>(), 72);
    }

    #[test]
    fn symmetrizer_small() {
        let x = rank1(5).unwrap();
        let cfg = NicholsConfig::default();
        assert_eq!(quantum_symmetrizer(&x, 1, &cfg).unwrap(), Matrix::identity(1));
        let q = z(5, 1);
        let s2 = quantum_symmetrizer(&x, 2, &cfg).unwrap();
        assert_eq!(s2.get(0, 0), &(&CycNum::one() + &q));
        for n in 1..=6 {
            let s = quantum_symmetrizer(&rank1(n as u32).unwrap(), n, &cfg).unwrap();
            assert_eq!(s.get(0, 0), &q_factorial(n as u32, &z(n as u32, 1)));
            assert!(s.get(0, 0).is_zero() == (n > 1));
        }
        assert!(matches!(quantum_symmetrizer(&x, 9, &cfg), Err(Error::Resource(_))));
        assert!(matches!(quantum_symmetrizer(&a2(2).unwrap(), 8, &NicholsConfig { max_degree: 8, max_words: 100 }), Err(Error::Resource(_))));
    }

    #[test]
    fn fast_symmetrizer_matches_brute_force() {
        for x in [a2(3).unwrap(), parabolic2(3).unwrap(), fermions().unwrap()] {
            let q = x.braid_matrix().unwrap();
            for n in 1..=5usize {
                let full = symmetrizer_from_matrix(&q, n, &NicholsConfig::default()).unwrap();
                for d in multidegrees(2, n as u32) {
                    let words = words_of(&d);
                    let block = symmetrizer_block(&q, &d);
                    for (j, w) in words.iter().enumerate() {
                        for (i, u) in words.iter().enumerate() {
                            assert_eq!(block.get(i, j), full.get(word_index(u, 2), word_index(w, 2)));
                        }
                        // shuffle products realise the same operator
                        let sh = shuffle_word(&q, w);
                        for (i, u) in words.iter().enumerate() {
                            assert_eq!(sh.get(u).cloned().unwrap_or_else(CycNum::zero), *block.get(i, j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rank_one_hilbert() {
        assert_eq!(data(&rank1(3).unwrap(), 4).hilbert, vec![1, 1, 1, 0, 0]);
        assert_eq!(data(&rank1(1).unwrap(), 4).hilbert, vec![1, 1, 1, 1, 1]);
        assert_eq!(data(&rank1(2).unwrap(), 5).hilbert, vec![1, 1, 0, 0, 0, 0]);
        assert_eq!(data(&rank1(2).unwrap(), 5).total_dimension(), TotalDimension::Finite(2));
        assert_eq!(data(&rank1(1).unwrap(), 5).total_dimension(), TotalDimension::AtLeast(6));
    }

    #[test]
    fn dims_match_symmetrizer_rank() {
        for x in [a2(2).unwrap(), a2(3).unwrap(), parabolic2(3).unwrap(), fermions().unwrap()] {
            let d = data(&x, 5);
            let q = x.braid_matrix().unwrap();
            for n in 0..=5 {
                for m in multidegrees(2, n) {
                    assert_eq!(d.dim(&m), symmetrizer_block(&q, &m).rank(), "{m:?}");
                    assert_eq!(d.dim(&m), shuffle_rank(&q, &m), "{m:?}");
                }
            }
        }
    }

    #[test]
    fn permutation_invariance() {
        let x = parabolic2(4).unwrap();
        let q = x.braid_matrix().unwrap();
        let swapped = vec![vec![q[1][1].clone(), q[1][0].clone()], vec![q[0][1].clone(), q[0][0].clone()]];
        let cfg = NicholsConfig { max_degree: 6, max_words: 5000 };
        let a = NicholsData::from_matrix(q, &cfg).unwrap();
        let b = NicholsData::from_matrix(swapped, &cfg).unwrap();
        for (m, c) in &a.components {
            assert_eq!(b.dim(&[m[1], m[0]]), c.dim());
        }
        assert_eq!(a.hilbert, b.hilbert);
    }

    #[test]
    fn cartan_totals() {
        assert_eq!(total_dimension(&a2(2).unwrap(), 8).unwrap(), TotalDimension::Finite(8));
        assert_eq!(total_dimension(&fermions().unwrap(), 6).unwrap(), TotalDimension::Finite(4));
        assert_eq!(total_dimension(&rank1(5).unwrap(), 8).unwrap(), TotalDimension::Finite(5));
    }

    #[test]
    fn basis_and_relations() {
        let d = data(&rank1(3).unwrap(), 4);
        assert_eq!(d.basis(&[2]), &[vec![0u8, 0]]);
        assert_eq!(d.relations(&[3]).unwrap(), vec![vec![(vec![0u8, 0, 0], CycNum::one())]]);
        assert_eq!(d.minimal_relations().unwrap(), vec![vec![(vec![0u8, 0, 0], CycNum::one())]]);
        // fermions with q_12 = q_21 = 1: x_i^2 and the commutator
        let f = data(&fermions().unwrap(), 4);
        let rels = f.minimal_relations().unwrap();
        assert_eq!(rels.len(), 3);
        assert_eq!(f.normal_form(&[1, 0]).unwrap(), vec![(vec![0u8, 1], CycNum::one())]);
    }

    #[test]
    fn coproducts() {
        let p = 5;
        let d = data(&rank1(p).unwrap(), 6);
        let q = z(p, 1);
        let prim = d.braided_coproduct(&[0], 0).unwrap();
        assert_eq!(prim, vec![((vec![], vec![0u8]), CycNum::one())]);
        let mid = d.braided_coproduct(&[0, 0], 1).unwrap();
        assert_eq!(mid, vec![((vec![0u8], vec![0u8]), q_int(2, &q))]);
        let w = vec![0u8; (p - 1) as usize];
        for k in 0..p as usize {
            let c = d.braided_coproduct(&w, k).unwrap();
            assert_eq!(c.len(), 1);
            assert_eq!(c[0].1, gauss_binomial(p - 1, k as u32, &q).unwrap());
            assert!(!c[0].1.is_zero());
        }
        assert!(d.braided_coproduct(&[0], 2).is_err());
        assert!(d.coproduct(&[0; 7]).is_err());
        assert!(d.counit(&[]).is_one() && d.counit(&[0]).is_zero());
    }

    #[test]
    fn bialgebra_axiom() {
        for p in [2u32, 3, 4] {
            let d = data(&rank1(p).unwrap(), 6);
            assert!(d.check_bialgebra_axiom(6).unwrap().ok);
        }
        let d = data(&parabolic2(3).unwrap(), 5);
        assert!(d.check_bialgebra_axiom(5).unwrap().ok);
        // x^2 = 0 is not a coideal at q = 1 or q = ζ_5
        for q in [CycNum::one(), z(5, 1)] {
            let m = NicholsData::monomial_quotient(vec![vec![q]], &[vec![0, 0]], 4);
            let rep = m.check_bialgebra_axiom(4).unwrap();
            assert!(!rep.ok);
            assert_eq!(rep.witness, Some((vec![0], vec![0])));
            assert!(m.check_bialgebra_axiom(1).unwrap().ok);
        }
        // but at q = -1 it is the Nichols ideal
        let m = NicholsData::monomial_quotient(vec![vec![CycNum::from_int(-1)]], &[vec![0, 0]], 4);
        assert!(m.check_bialgebra_axiom(4).unwrap().ok);
    }

    #[test]
    fn unrolled_test() {
        let x = rank1(3).unwrap();
        let d = data(&x, 4);
        assert!(d.is_sufficiently_unrolled(&x).ok);
        let t = rank1_torsion(2, int(1)).unwrap();
        let d = data(&t, 4);
        assert_eq!(d.hilbert, vec![1, 1, 0, 0, 0]);
        let rep = d.is_sufficiently_unrolled(&t);
        assert!(!rep.ok);
        assert_eq!(rep.witness, Some((vec![1], vec![1], vec![0])));
        let empty = BraidedObject::new(Bicharacter::from_form(&[]).unwrap(), vec![]).unwrap();
        let d = data(&empty, 3);
        assert!(d.is_sufficiently_unrolled(&empty).ok);
        assert_eq!(d.hilbert, vec![1, 0, 0, 0]);
    }

    #[test]
    fn braid_matrix_of_presets() {
        let x = a2(3).unwrap();
        let q = x.braid_matrix().unwrap();
        assert_eq!(q[0][0], z(3, 1));
        assert_eq!(&q[0][1] * &q[1][0], z(3, -1));
    }
}

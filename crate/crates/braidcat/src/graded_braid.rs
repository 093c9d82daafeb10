//! Grading groups, bicharacters, diagonally braided objects and lattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{fmt_rational, int, parse_rational, CycNum, Q};
use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;

/// Γ = Z^r ⊕ Z_{m_1} ⊕ … ⊕ Z_{m_t}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradingGroup {
    pub free_rank: usize,
    pub torsion: Vec<u32>,
}

impl GradingGroup {
    pub fn new(free_rank: usize, torsion: Vec<u32>) -> Result<Self> {
        if let Some(m) = torsion.iter().find(|&&m| m < 2) {
            return invalid(format!("torsion order {m} must be at least 2"));
        }
        Ok(GradingGroup { free_rank, torsion })
    }

    pub fn free(r: usize) -> Self {
        GradingGroup { free_rank: r, torsion: vec![] }
    }

    pub fn cyclic(m: u32) -> Result<Self> {
        GradingGroup::new(0, vec![m])
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn zero(&self) -> Degree {
        Degree { free: vec![Q::zero(); self.free_rank], torsion: vec![0; self.torsion.len()] }
    }

    /// Builds a degree, reducing torsion residues.
    pub fn degree(&self, free: Vec<Q>, torsion: Vec<i64>) -> Result<Degree> {
        if free.len() != self.free_rank || torsion.len() != self.torsion.len() {
            return invalid(format!(
                "degree shape ({}, {}) does not match group ({}, {})",
                free.len(),
                torsion.len(),
                self.free_rank,
                self.torsion.len()
            ));
        }
        let torsion = torsion.iter().zip(&self.torsion).map(|(t, &m)| t.rem_euclid(m as i64)).collect();
        Ok(Degree { free, torsion })
    }

    pub fn contains(&self, d: &Degree) -> bool {
        d.free.len() == self.free_rank
            && d.torsion.len() == self.torsion.len()
            && d.torsion.iter().zip(&self.torsion).all(|(&t, &m)| (0..m as i64).contains(&t))
    }

    pub fn add(&self, a: &Degree, b: &Degree) -> Degree {
        Degree {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion)
                .map(|((x, y), &m)| (x + y).rem_euclid(m as i64))
                .collect(),
        }
    }

    pub fn neg(&self, a: &Degree) -> Degree {
        Degree {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a.torsion.iter().zip(&self.torsion).map(|(x, &m)| (-x).rem_euclid(m as i64)).collect(),
        }
    }

    pub fn scale(&self, n: i64, a: &Degree) -> Degree {
        Degree {
            free: a.free.iter().map(|x| x * int(n)).collect(),
            torsion: a.torsion.iter().zip(&self.torsion).map(|(x, &m)| (x * n).rem_euclid(m as i64)).collect(),
        }
    }

    pub fn label(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|m| format!("Z{m}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// An element of a grading group: rational free coordinates, torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree {
    pub free: Vec<Q>,
    pub torsion: Vec<i64>,
}

impl Degree {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|x| x.is_zero()) && self.torsion.iter().all(|&t| t == 0)
    }

    /// Free coordinates followed by torsion coordinates, as rationals.
    pub fn coords(&self) -> Vec<Q> {
        self.free.iter().cloned().chain(self.torsion.iter().map(|&t| int(t))).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords().iter().map(fmt_rational).collect()
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// σ(λ, μ) = exp(πi · λᵀ A μ).
#[derive(Clone, Debug, PartialEq)]
pub struct Bicharacter {
    group: GradingGroup,
    exponents: Vec<Vec<Q>>,
}

fn in_2z(q: &Q) -> bool {
    q.is_integer() && q.numer().is_even()
}

impl Bicharacter {
    pub fn new(group: GradingGroup, exponents: Vec<Vec<Q>>) -> Result<Self> {
        let n = group.rank();
        if exponents.len() != n || exponents.iter().any(|r| r.len() != n) {
            return invalid(format!("exponent matrix must be {n}x{n}"));
        }
        let r = group.free_rank;
        for (j, &m) in group.torsion.iter().enumerate() {
            let jj = r + j;
            for i in 0..n {
                let m = int(m as i64);
                if !in_2z(&(&m * &exponents[i][jj])) || !in_2z(&(&m * &exponents[jj][i])) {
                    return Err(Error::Unsupported(format!(
                        "exponent a[{i}][{jj}] is not compatible with torsion order {m}: \
                         no bimultiplicative braiding exists (nontrivial associator)"
                    )));
                }
            }
        }
        Ok(Bicharacter { group, exponents })
    }

    /// Symmetric bicharacter on Z^r from a rational form, σ = e^{πi(λ,μ)}.
    pub fn from_form(form: &[Vec<Q>]) -> Result<Self> {
        Bicharacter::new(GradingGroup::free(form.len()), form.to_vec())
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[Vec<Q>] {
        &self.exponents
    }

    fn check(&self, d: &Degree) -> Result<()> {
        if self.group.contains(d) {
            Ok(())
        } else {
            invalid(format!("degree {d} is not in {}", self.group.label()))
        }
    }

    /// The exponent t with σ(λ, μ) = e^{πi t}.
    pub fn exponent(&self, l: &Degree, m: &Degree) -> Result<Q> {
        self.check(l)?;
        self.check(m)?;
        let r = self.group.free_rank;
        let a = l.coords();
        let b = m.coords();
        let mut t = Q::zero();
        for i in 0..a.len() {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..b.len() {
                let e = &self.exponents[i][j];
                if e.is_zero() || b[j].is_zero() {
                    continue;
                }
                let mixed = (i < r) != (j < r);
                if mixed && !(a[i].is_integer() && b[j].is_integer()) {
                    return Err(Error::Unsupported(format!(
                        "free-torsion coupling a[{i}][{j}] needs integral free coordinates"
                    )));
                }
                t += &a[i] * e * &b[j];
            }
        }
        Ok(t)
    }

    pub fn braiding_value(&self, l: &Degree, m: &Degree) -> Result<CycNum> {
        Ok(CycNum::exp_pi_i(&self.exponent(l, m)?))
    }

    pub fn quadratic_form(&self, l: &Degree) -> Result<CycNum> {
        self.braiding_value(l, l)
    }

    pub fn monodromy(&self, l: &Degree, m: &Degree) -> Result<CycNum> {
        Ok(CycNum::exp_pi_i(&(self.exponent(l, m)? + self.exponent(m, l)?)))
    }
}

/// A direct sum of lines C_{γ_i} with diagonal braiding q_ij = σ(γ_i, γ_j).
#[derive(Clone, Debug, PartialEq)]
pub struct BraidedObject {
    pub bichar: Bicharacter,
    pub degrees: Vec<Degree>,
}

impl BraidedObject {
    pub fn new(bichar: Bicharacter, degrees: Vec<Degree>) -> Result<Self> {
        for d in &degrees {
            bichar.check(d)?;
        }
        Ok(BraidedObject { bichar, degrees })
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn braid_matrix(&self) -> Result<Vec<Vec<CycNum>>> {
        self.degrees
            .iter()
            .map(|a| self.degrees.iter().map(|b| self.bichar.braiding_value(a, b)).collect())
            .collect()
    }

    /// Degree of a multidegree d ∈ N^n, i.e. Σ d_i γ_i.
    pub fn degree_of(&self, multi: &[u32]) -> Degree {
        let g = self.bichar.group();
        multi.iter().zip(&self.degrees).fold(g.zero(), |acc, (&k, d)| g.add(&acc, &g.scale(k as i64, d)))
    }
}

/// JSON/TOML form of a braided object; all numbers are exact strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidingSpec {
    pub group: GradingGroup,
    pub exponents: Vec<Vec<String>>,
    pub degrees: Vec<Vec<String>>,
}

impl BraidingSpec {
    pub fn build(&self) -> Result<BraidedObject> {
        let group = GradingGroup::new(self.group.free_rank, self.group.torsion.clone())?;
        let exps = self
            .exponents
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let b = Bicharacter::new(group.clone(), exps)?;
        let mut degs = Vec::new();
        for d in &self.degrees {
            if d.len() != group.rank() {
                return invalid(format!("degree {d:?} has wrong length"));
            }
            let free = d[..group.free_rank].iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            let tors = d[group.free_rank..]
                .iter()
                .map(|s| {
                    let q = parse_rational(s)?;
                    if !q.is_integer() {
                        return Err(Error::Parse(format!("torsion coordinate {s} is not an integer")));
                    }
                    q.numer().to_i64().ok_or_else(|| Error::Parse(s.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            degs.push(group.degree(free, tors)?);
        }
        BraidedObject::new(b, degs)
    }

    pub fn from_object(x: &BraidedObject) -> Self {
        BraidingSpec {
            group: x.bichar.group().clone(),
            exponents: x.bichar.exponents().iter().map(|r| r.iter().map(fmt_rational).collect()).collect(),
            degrees: x.degrees.iter().map(|d| d.to_strings()).collect(),
        }
    }
}

/// A full-rank-or-not lattice Λ = ⊕ Z b_i inside (Q^r, G).
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    pub form: Vec<Vec<Q>>,
    pub basis: Vec<Vec<Q>>,
}

fn pair(form: &[Vec<Q>], a: &[Q], b: &[Q]) -> Q {
    let mut t = Q::zero();
    for i in 0..a.len() {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..b.len() {
            if !form[i][j].is_zero() && !b[j].is_zero() {
                t += &a[i] * &form[i][j] * &b[j];
            }
        }
    }
    t
}

impl Lattice {
    pub fn new(form: Vec<Vec<Q>>, basis: Vec<Vec<Q>>) -> Result<Self> {
        let r = form.len();
        if form.iter().any(|row| row.len() != r) {
            return invalid("form must be square");
        }
        for i in 0..r {
            for j in 0..r {
                if form[i][j] != form[j][i] {
                    return invalid("form must be symmetric");
                }
            }
        }
        if basis.iter().any(|b| b.len() != r) {
            return invalid("basis vectors must match the ambient dimension");
        }
        let m = Matrix::from_rows(basis.clone());
        if !basis.is_empty() && m.rank() != basis.len() {
            return invalid("basis vectors are linearly dependent");
        }
        Ok(Lattice { form, basis })
    }

    /// √(2p)Z in α_- coordinates: (α_-, α_-) = 2/p and α_+ = −p α_-.
    pub fn triplet(p: u32) -> Result<Self> {
        if p < 2 {
            return invalid("p must be at least 2");
        }
        Lattice::new(vec![vec![Q::new(2.into(), BigInt::from(p))]], vec![vec![int(-(p as i64))]])
    }

    pub fn ambient_dim(&self) -> usize {
        self.form.len()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn pair(&self, a: &[Q], b: &[Q]) -> Q {
        pair(&self.form, a, b)
    }

    pub fn gram(&self) -> Matrix<Q> {
        Matrix::from_rows(self.basis.iter().map(|a| self.basis.iter().map(|b| self.pair(a, b)).collect()).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.gram().data.iter().all(|x| x.is_integer())
    }

    pub fn is_even(&self) -> bool {
        let g = self.gram();
        self.is_integral() && (0..g.rows).all(|i| in_2z(g.get(i, i)))
    }

    fn check_even(&self) -> Result<()> {
        let g = self.gram();
        for i in 0..g.rows {
            for j in 0..g.cols {
                if !g.get(i, j).is_integer() {
                    return invalid(format!("lattice is not integral: (b{i}, b{j}) = {}", fmt_rational(g.get(i, j))));
                }
            }
            if !in_2z(g.get(i, i)) {
                return invalid(format!("lattice is not even: basis vector b{i} has norm {}", fmt_rational(g.get(i, i))));
            }
        }
        Ok(())
    }

    /// Λ* = {λ ∈ span Λ : (λ, α) ∈ Z for α ∈ Λ}, basis dual to the given one.
    pub fn dual(&self) -> Result<Lattice> {
        let g = self.gram();
        let gi = g.inverse().map_err(|_| Error::Degenerate("Gram matrix is singular".into()))?;
        let n = self.rank();
        let r = self.ambient_dim();
        let basis = (0..n)
            .map(|j| {
                let mut v = vec![Q::zero(); r];
                for k in 0..n {
                    let c = gi.get(j, k);
                    if c.is_zero() {
                        continue;
                    }
                    for (x, b) in v.iter_mut().zip(&self.basis[k]) {
                        *x += c * b;
                    }
                }
                v
            })
            .collect();
        Lattice::new(self.form.clone(), basis)
    }

    /// Coordinates of v in the basis, if v lies in the rational span.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        if self.basis.is_empty() {
            return if v.iter().all(|x| x.is_zero()) { Some(vec![]) } else { None };
        }
        Matrix::from_rows(self.basis.clone()).transpose().solve(v)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    pub fn same_lattice(&self, o: &Lattice) -> bool {
        self.rank() == o.rank()
            && self.basis.iter().all(|b| o.contains(b))
            && o.basis.iter().all(|b| self.contains(b))
    }

    /// Λ*/Λ with its quadratic form; requires Λ even.
    pub fn discriminant_form(&self) -> Result<DiscriminantForm> {
        self.check_even()?;
        let n = self.rank();
        let g: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..n).map(|j| self.gram().get(i, j).numer().clone()).collect()).collect();
        let snf = smith_normal_form(&g);
        if snf.diag.iter().any(|d| d.is_zero()) {
            return Err(Error::Degenerate("Gram matrix is singular".into()));
        }
        let dual = self.dual()?;
        let vinv = snf.v_inv();
        let mut orders = Vec::new();
        let mut gens = Vec::new();
        let mut slots = Vec::new();
        for (i, d) in snf.diag.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            orders.push(d.to_u32().ok_or_else(|| Error::Resource("discriminant group too large".into()))?);
            slots.push(i);
            // row i of V^{-1}, in dual-basis coordinates
            let mut amb = vec![Q::zero(); self.ambient_dim()];
            for (k, c) in vinv[i].iter().enumerate() {
                for (x, b) in amb.iter_mut().zip(&dual.basis[k]) {
                    *x += Q::from_integer(c.clone()) * b;
                }
            }
            gens.push(amb);
        }
        Ok(DiscriminantForm {
            group: GradingGroup { free_rank: 0, torsion: orders },
            generators: gens,
            slots,
            v: snf.v.clone(),
            diag: snf.diag.clone(),
            lattice: self.clone(),
        })
    }
}

/// JSON/TOML form of a lattice: Gram form of the ambient space and basis rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub form: Vec<Vec<String>>,
    pub basis: Vec<Vec<String>>,
}

impl LatticeSpec {
    pub fn build(&self) -> Result<Lattice> {
        let parse = |m: &[Vec<String>]| {
            m.iter()
                .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
        };
        Lattice::new(parse(&self.form)?, parse(&self.basis)?)
    }

    pub fn from_lattice(l: &Lattice) -> Self {
        let strs = |m: &[Vec<Q>]| m.iter().map(|r| r.iter().map(fmt_rational).collect()).collect();
        LatticeSpec { form: strs(&l.form), basis: strs(&l.basis) }
    }
}

/// The finite quadratic module Λ*/Λ.
#[derive(Clone, Debug)]
pub struct DiscriminantForm {
    pub group: GradingGroup,
    /// ambient representatives of the cyclic generators
    pub generators: Vec<Vec<Q>>,
    slots: Vec<usize>,
    v: Vec<Vec<BigInt>>,
    diag: Vec<BigInt>,
    lattice: Lattice,
}

impl DiscriminantForm {
    pub fn order(&self) -> u64 {
        self.group.torsion.iter().map(|&m| m as u64).product()
    }

    /// All elements in lexicographic order of residues.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &m in &self.group.torsion {
            out = out
                .into_iter()
                .flat_map(|v| (0..m as i64).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                }))
                .collect();
        }
        out
    }

    /// Ambient representative of a residue vector.
    pub fn representative(&self, k: &[i64]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.lattice.ambient_dim()];
        for (c, g) in k.iter().zip(&self.generators) {
            for (x, y) in v.iter_mut().zip(g) {
                *x += int(*c) * y;
            }
        }
        v
    }

    /// Residues of λ ∈ Λ* (ambient coordinates); errors if λ ∉ Λ*.
    pub fn class_of(&self, l: &[Q]) -> Result<Vec<i64>> {
        let c: Vec<Q> = self.lattice.basis.iter().map(|b| self.lattice.pair(l, b)).collect();
        if c.iter().any(|x| !x.is_integer()) {
            return invalid("vector is not in the dual lattice");
        }
        if self.lattice.coordinates(l).is_none() {
            return invalid("vector is not in the span of the lattice");
        }
        let n = c.len();
        Ok(self
            .slots
            .iter()
            .map(|&i| {
                let mut y = BigInt::zero();
                for k in 0..n {
                    y += c[k].numer() * &self.v[k][i];
                }
                y.mod_floor(&self.diag[i]).to_i64().unwrap()
            })
            .collect())
    }

    pub fn quadratic_form(&self, k: &[i64]) -> CycNum {
        let v = self.representative(k);
        CycNum::exp_pi_i(&self.lattice.pair(&v, &v))
    }

    /// e^{πi(λ_k, λ_l)} on the chosen representatives; not bimultiplicative in general.
    pub fn braiding_value(&self, k: &[i64], l: &[i64]) -> CycNum {
        CycNum::exp_pi_i(&self.lattice.pair(&self.representative(k), &self.representative(l)))
    }

    pub fn monodromy(&self, k: &[i64], l: &[i64]) -> CycNum {
        let t = self.lattice.pair(&self.representative(k), &self.representative(l));
        CycNum::exp_pi_i(&(&t + &t))
    }
}

pub struct Snf {
    pub diag: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl Snf {
    /// V^{-1} computed by exact rational inversion (V is unimodular).
    pub fn v_inv(&self) -> Vec<Vec<BigInt>> {
        let m = Matrix::from_rows(self.v.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect());
        let inv = m.inverse().expect("unimodular");
        (0..m.rows).map(|i| (0..m.cols).map(|j| inv.get(i, j).to_integer()).collect()).collect()
    }
}

/// Smith normal form U·A·V = diag(d_1 | d_2 | …) of a square integer matrix.
/// Pivot choice: smallest absolute value, leftmost column on ties, then topmost row.
pub fn smith_normal_form(a: &[Vec<BigInt>]) -> Snf {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut a: Vec<Vec<BigInt>> = a.to_vec();
    let ident = |k: usize| -> Vec<Vec<BigInt>> {
        (0..k).map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
    };
    let mut u = ident(n);
    let mut v = ident(m);
    let t_max = n.min(m);
    let mut t = 0;
    while t < t_max {
        // choose pivot
        let mut best: Option<(BigInt, usize, usize)> = None;
        for j in t..m {
            for i in t..n {
                if a[i][j].is_zero() {
                    continue;
                }
                let ab = a[i][j].abs();
                if best.as_ref().is_none_or(|(b, _, _)| ab < *b) {
                    best = Some((ab, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        // clear column
        for i in t + 1..n {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            for j in 0..m {
                let x = &a[t][j] * &q;
                a[i][j] -= x;
            }
            for j in 0..n {
                let x = &u[t][j] * &q;
                u[i][j] -= x;
            }
            if !a[i][t].is_zero() {
                dirty = true;
            }
        }
        // clear row
        for j in t + 1..m {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for i in 0..n {
                let x = &a[i][t] * &q;
                a[i][j] -= x;
            }
            for i in 0..m {
                let x = &v[i][t] * &q;
                v[i][j] -= x;
            }
            if !a[t][j].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // divisibility of the remaining block
        let d = a[t][t].clone();
        let bad = (t + 1..n).find(|&i| (t + 1..m).any(|j| !a[i][j].mod_floor(&d).is_zero()));
        if let Some(i) = bad {
            for j in 0..m {
                let x = a[i][j].clone();
                a[t][j] += x;
            }
            for j in 0..n {
                let x = u[i][j].clone();
                u[t][j] += x;
            }
            continue;
        }
        if a[t][t].is_negative() {
            for j in 0..m {
                a[t][j] = -a[t][j].clone();
            }
            for j in 0..n {
                u[t][j] = -u[t][j].clone();
            }
        }
        t += 1;
    }
    let diag = (0..t_max).map(|i| a[i][i].clone()).collect();
    Snf { diag, u, v }
}

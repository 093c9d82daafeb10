//! Yetter–Drinfeld modules over rank-one Nichols algebras in Vect_Γ, their
//! braiding, locality over lattice algebras and the uprolling of gradings.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cyclotomic::{fmt_rational, gauss_binomial, int, parse_rational, q_factorial, rat, CycJson, CycNum, Q};
use crate::error::{invalid, Error, Result};
use crate::graded_braid::{Bicharacter, BraidedObject, BraidingSpec, Degree, DiscriminantForm, Lattice};
use crate::linalg::Matrix;
use crate::nichols::{NicholsConfig, NicholsData};

/// N = C[x]/(x^n) with x in degree γ and q = σ(γ, γ) of order n.
#[derive(Clone, Debug, PartialEq)]
pub struct RankOne {
    pub bichar: Bicharacter,
    pub gamma: Degree,
    pub q: CycNum,
    pub n: usize,
}

impl RankOne {
    pub fn new(bichar: Bicharacter, gamma: Degree) -> Result<Self> {
        let q = bichar.braiding_value(&gamma, &gamma)?;
        let n = match q.as_root_of_unity() {
            Some((n, _)) if n > 1 => n as usize,
            _ => {
                return Err(Error::Unsupported(format!(
                    "self-braiding {} gives an infinite-dimensional Nichols algebra",
                    q.to_text()
                )))
            }
        };
        Ok(RankOne { bichar, gamma, q, n })
    }

    /// x in degree α_- with (α_-, α_-) = 2/p, so q = e^{2πi/p}.
    pub fn singlet(p: u32) -> Result<Self> {
        if p < 2 {
            return invalid("p must be at least 2");
        }
        let b = Bicharacter::from_form(&[vec![rat(2, p as i64)]])?;
        let g = b.group().degree(vec![int(1)], vec![])?;
        RankOne::new(b, g)
    }

    pub fn shift(&self, l: &Degree, k: i64) -> Degree {
        let g = self.bichar.group();
        g.add(l, &g.scale(k, &self.gamma))
    }

    fn sigma(&self, a: &Degree, b: &Degree) -> Result<CycNum> {
        self.bichar.braiding_value(a, b)
    }

    fn binom(&self, a: usize, b: usize) -> Result<CycNum> {
        gauss_binomial(a as u32, b as u32, &self.q)
    }

    fn qpow(&self, e: i64) -> CycNum {
        self.q.pow(e).expect("q is a root of unity")
    }

    /// Coefficient of x^k in S^{-1}(x^k): S(x^k) = (−1)^k q^{k(k−1)/2} x^k.
    fn antipode_inv(&self, k: usize) -> CycNum {
        let k = k as i64;
        let s = self.qpow(-k * (k - 1) / 2);
        if k % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// The double braiding B(λ, γ) = σ(λ, γ)σ(γ, λ).
    pub fn monodromy(&self, l: &Degree) -> Result<CycNum> {
        self.bichar.monodromy(l, &self.gamma)
    }
}

/// A graded vector space with x-action and N-coaction
/// δ(m) = Σ_k x^k ⊗ coaction[k]·m.
#[derive(Clone, Debug)]
pub struct YDModule {
    pub name: String,
    pub base: RankOne,
    pub degrees: Vec<Degree>,
    pub action: Matrix<CycNum>,
    pub coaction: Vec<Matrix<CycNum>>,
}

fn col(m: &Matrix<CycNum>, j: usize) -> Vec<CycNum> {
    m.col(j)
}

fn axpy(acc: &mut [CycNum], c: &CycNum, v: &[CycNum]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

impl YDModule {
    pub fn new(
        name: impl Into<String>,
        base: RankOne,
        degrees: Vec<Degree>,
        action: Matrix<CycNum>,
        coaction: Vec<Matrix<CycNum>>,
    ) -> Result<Self> {
        let d = degrees.len();
        if action.rows != d || action.cols != d {
            return invalid("action matrix has the wrong shape");
        }
        if coaction.len() != base.n || coaction.iter().any(|m| m.rows != d || m.cols != d) {
            return invalid(format!("coaction needs {} square matrices of size {d}", base.n));
        }
        for l in &degrees {
            if !base.bichar.group().contains(l) {
                return invalid(format!("degree {l} is not in the grading group"));
            }
        }
        Ok(YDModule { name: name.into(), base, degrees, action, coaction })
    }

    /// C_λ with action through ε and coaction through the unit.
    pub fn trivial(base: &RankOne, l: Degree) -> Result<Self> {
        let mut co = vec![Matrix::zeros(1, 1); base.n];
        co[0] = Matrix::identity(1);
        YDModule::new(format!("C{l}"), base.clone(), vec![l], Matrix::zeros(1, 1), co)
    }

    /// V_0 = N with the braided adjoint action and the regular coaction.
    pub fn verma(base: &RankOne) -> Result<Self> {
        let n = base.n;
        let degrees = (0..n as i64).map(|j| base.shift(&base.bichar.group().zero(), j)).collect();
        let mut x = Matrix::zeros(n, n);
        // ad_x(x^j) = x^{j+1} − σ(γ, jγ) x^j x = (1 − q^j) x^{j+1}
        for j in 0..n - 1 {
            x.set(j + 1, j, CycNum::one() - base.qpow(j as i64));
        }
        let mut co = Vec::with_capacity(n);
        for k in 0..n {
            let mut d = Matrix::zeros(n, n);
            for j in k..n {
                d.set(j - k, j, base.binom(j, k)?);
            }
            co.push(d);
        }
        YDModule::new("V0", base.clone(), degrees, x, co)
    }

    /// The chain m_0, …, m_{l−1} in degrees λ + jγ with x·m_j = m_{j+1} and
    /// x*·m_{j+1} = a_{j+1} m_j; the coaction is D_k = Y^k/[k]!.
    pub fn chain(base: &RankOne, l: Degree, a: &[CycNum]) -> Result<Self> {
        let len = a.len() + 1;
        if len > base.n {
            return invalid(format!("chain length {len} exceeds dim N = {}", base.n));
        }
        let degrees: Vec<Degree> = (0..len as i64).map(|j| base.shift(&l, j)).collect();
        let mut x = Matrix::zeros(len, len);
        let mut y = Matrix::zeros(len, len);
        for j in 0..len - 1 {
            x.set(j + 1, j, CycNum::one());
            y.set(j, j + 1, a[j].clone());
        }
        let mut co = Vec::with_capacity(base.n);
        let mut yk = Matrix::identity(len);
        for k in 0..base.n {
            let f = q_factorial(k as u32, &base.q).inv()?;
            co.push(yk.scale(&f));
            yk = y.mul(&yk);
        }
        YDModule::new(format!("C({l},{len})"), base.clone(), degrees, x, co)
    }

    /// The coefficients forced by the linking relation:
    /// a_{j+1} = q a_j + 1 − B(λ + jγ, γ), a_0 = 0.
    pub fn linking_coefficients(base: &RankOne, l: &Degree, len: usize) -> Result<Vec<CycNum>> {
        let mut a = Vec::with_capacity(len.saturating_sub(1));
        let mut prev = CycNum::zero();
        for j in 0..len.saturating_sub(1) {
            let b = base.monodromy(&base.shift(l, j as i64))?;
            let next = &(&base.q * &prev) + &(CycNum::one() - b);
            a.push(next.clone());
            prev = next;
        }
        Ok(a)
    }

    /// C_{λ,l} with the YD structure induced by the linking relation.
    pub fn induced_chain(base: &RankOne, l: Degree, len: usize) -> Result<Self> {
        let a = YDModule::linking_coefficients(base, &l, len)?;
        YDModule::chain(base, l, &a)
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// x*·m = ⟨x*, m^{(-1)}⟩ m^{(0)}.
    pub fn dual_action(&self) -> &Matrix<CycNum> {
        &self.coaction[1]
    }

    fn powers(&self) -> Vec<Matrix<CycNum>> {
        let mut out = vec![Matrix::identity(self.dim())];
        for _ in 1..=self.base.n {
            let next = self.action.mul(out.last().unwrap());
            out.push(next);
        }
        out
    }

    /// Module, comodule and grading axioms; the first failure, if any.
    pub fn check_axioms(&self) -> Option<String> {
        let n = self.base.n;
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                if !self.action.get(i, j).is_zero() && self.degrees[i] != self.base.shift(&self.degrees[j], 1) {
                    return Some(format!("action entry ({i},{j}) is not of degree γ"));
                }
                for k in 0..n {
                    if !self.coaction[k].get(i, j).is_zero()
                        && self.degrees[i] != self.base.shift(&self.degrees[j], -(k as i64))
                    {
                        return Some(format!("coaction component {k} entry ({i},{j}) breaks the grading"));
                    }
                }
            }
        }
        if !self.powers()[n].is_zero() {
            return Some(format!("x^{n} does not act by zero"));
        }
        if self.coaction[0] != Matrix::identity(d) {
            return Some("counit axiom fails".into());
        }
        for j in 0..n {
            for k in 0..n {
                let lhs = self.coaction[j].mul(&self.coaction[k]);
                let rhs = if j + k < n {
                    match self.base.binom(j + k, k) {
                        Ok(c) => self.coaction[j + k].scale(&c),
                        Err(e) => return Some(e.to_string()),
                    }
                } else {
                    Matrix::zeros(d, d)
                };
                if lhs != rhs {
                    return Some(format!("coassociativity fails for (x^{k}, x^{j})"));
                }
            }
        }
        None
    }
}

/// A matrix entry in files: a rational string or a full {order, coeffs} element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntrySpec {
    Rational(String),
    Cyclotomic(CycJson),
}

impl EntrySpec {
    pub fn value(&self) -> Result<CycNum> {
        match self {
            EntrySpec::Rational(s) => Ok(CycNum::from_rational(parse_rational(s)?)),
            EntrySpec::Cyclotomic(j) => CycNum::from_json(j),
        }
    }

    pub fn of(c: &CycNum) -> Self {
        match c.as_rational() {
            Some(q) => EntrySpec::Rational(fmt_rational(&q)),
            None => EntrySpec::Cyclotomic(c.to_json()),
        }
    }
}

/// JSON/TOML form of a YD module. `base` is a rank-one braiding whose single
/// degree is γ; `coaction[k]` is the matrix D_k of the x^k component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YdModuleSpec {
    #[serde(default)]
    pub name: String,
    pub base: BraidingSpec,
    pub degrees: Vec<Vec<String>>,
    pub action: Vec<Vec<EntrySpec>>,
    pub coaction: Vec<Vec<Vec<EntrySpec>>>,
}

fn matrix_of(rows: &[Vec<EntrySpec>]) -> Result<Matrix<CycNum>> {
    let rows = rows.iter().map(|r| r.iter().map(EntrySpec::value).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return invalid("matrices must be square");
    }
    Ok(Matrix::from_rows(rows))
}

fn rows_of(m: &Matrix<CycNum>) -> Vec<Vec<EntrySpec>> {
    (0..m.rows).map(|i| m.row(i).iter().map(EntrySpec::of).collect()).collect()
}

impl YdModuleSpec {
    pub fn build(&self) -> Result<YDModule> {
        let x = self.base.build()?;
        if x.rank() != 1 {
            return invalid("the base braiding must have rank one");
        }
        let base = RankOne::new(x.bichar.clone(), x.degrees[0].clone())?;
        let g = base.bichar.group();
        let mut degrees = Vec::new();
        for d in &self.degrees {
            if d.len() != g.rank() || g.free_rank != g.rank() {
                return invalid("module degrees must be free coordinates of the base group");
            }
            degrees.push(g.degree(d.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?, vec![])?);
        }
        let co = self.coaction.iter().map(|m| matrix_of(m)).collect::<Result<Vec<_>>>()?;
        YDModule::new(self.name.clone(), base, degrees, matrix_of(&self.action)?, co)
    }

    pub fn from_module(m: &YDModule) -> Self {
        let base = BraidedObject::new(m.base.bichar.clone(), vec![m.base.gamma.clone()]).expect("base is valid");
        YdModuleSpec {
            name: m.name.clone(),
            base: BraidingSpec::from_object(&base),
            degrees: m.degrees.iter().map(|d| d.to_strings()).collect(),
            action: rows_of(&m.action),
            coaction: m.coaction.iter().map(rows_of).collect(),
        }
    }
}

/// Location of a failed YD identity: h = x^power applied to basis vector m_basis,
/// differing in the x^component part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YdViolation {
    pub power: usize,
    pub basis: usize,
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YdCheck {
    pub ok: bool,
    pub axioms: Option<String>,
    pub violation: Option<YdViolation>,
}

/// The braided YD condition
///   h₍₁₎m₍₋₁₎ ⊗ h₍₂₎·m₍₀₎ = (h₍₁₎·m)₍₋₁₎h₍₂₎ ⊗ (h₍₁₎·m)₍₀₎
/// with c_{N,N} inserted on the left and c_{N,M}, c_{M,N} on the right,
/// checked for all h = x^a and all basis vectors.
pub fn yd_check(m: &YDModule) -> Result<YdCheck> {
    if let Some(msg) = m.check_axioms() {
        return Ok(YdCheck { ok: false, axioms: Some(msg), violation: None });
    }
    let b = &m.base;
    let n = b.n;
    let d = m.dim();
    let xs = m.powers();
    let zero = b.bichar.group().zero();
    for a in 1..n {
        let ha = |k: usize| b.shift(&zero, k as i64);
        for j in 0..d {
            let lj = &m.degrees[j];
            let mut lhs = vec![vec![CycNum::zero(); d]; n];
            let mut rhs = vec![vec![CycNum::zero(); d]; n];
            for s in 0..=a {
                let c = b.binom(a, s)?;
                // left: h₍₁₎ = x^s, h₍₂₎ = x^{a−s} passes m₍₋₁₎ = x^k
                for k in 0..n - s {
                    let f = &c * &b.sigma(&ha(a - s), &ha(k))?;
                    let v = xs[a - s].apply(&col(&m.coaction[k], j));
                    axpy(&mut lhs[s + k], &f, &v);
                }
                // right: h₍₂₎ passes m, then (h₍₁₎·m)₍₀₎ passes h₍₂₎
                let f1 = &c * &b.sigma(&ha(a - s), lj)?;
                let v = col(&xs[s], j);
                for k in 0..n {
                    if k + a - s >= n {
                        continue;
                    }
                    let deg = b.shift(lj, s as i64 - k as i64);
                    let f = &f1 * &b.sigma(&deg, &ha(a - s))?;
                    let w = m.coaction[k].apply(&v);
                    axpy(&mut rhs[k + a - s], &f, &w);
                }
            }
            for comp in 0..n {
                if lhs[comp] != rhs[comp] {
                    return Ok(YdCheck {
                        ok: false,
                        axioms: None,
                        violation: Some(YdViolation { power: a, basis: j, component: comp }),
                    });
                }
            }
        }
    }
    Ok(YdCheck { ok: true, axioms: None, violation: None })
}

fn same_base(m: &YDModule, n: &YDModule) -> Result<()> {
    if m.base != n.base {
        return invalid("modules live over different Nichols algebras");
    }
    Ok(())
}

/// c_{M,N} = (ρ_N ⊗ id)(id ⊗ c_{M,N})(δ_M ⊗ id) as a matrix M⊗N → N⊗M.
/// Basis m_i ⊗ n_j has index i·dim N + j; n_j ⊗ m_i has index j·dim M + i.
pub fn yd_braiding(m: &YDModule, n: &YDModule) -> Result<Matrix<CycNum>> {
    same_base(m, n)?;
    let b = &m.base;
    let (dm, dn) = (m.dim(), n.dim());
    let xs = n.powers();
    let mut out = Matrix::zeros(dm * dn, dm * dn);
    for i in 0..dm {
        for j in 0..dn {
            for k in 0..b.n {
                let s = b.sigma(&b.shift(&m.degrees[i], -(k as i64)), &n.degrees[j])?;
                for r in 0..dn {
                    let xr = xs[k].get(r, j);
                    if xr.is_zero() {
                        continue;
                    }
                    for t in 0..dm {
                        let dt = m.coaction[k].get(t, i);
                        if dt.is_zero() {
                            continue;
                        }
                        let row = r * dm + t;
                        let colx = i * dn + j;
                        let v = out.get(row, colx) + &(&s * &(xr * dt));
                        out.set(row, colx, v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// c^{-1} = c^{-1}_{M,N}(ρ_N ⊗ id)(c^{-1}_{N,N-obj} ⊗ id)(id ⊗ S^{-1} ⊗ id)(id ⊗ δ_M),
/// a matrix N⊗M → M⊗N.
pub fn yd_braiding_inverse(m: &YDModule, n: &YDModule) -> Result<Matrix<CycNum>> {
    same_base(m, n)?;
    let b = &m.base;
    let (dm, dn) = (m.dim(), n.dim());
    let xs = n.powers();
    let zero = b.bichar.group().zero();
    let mut out = Matrix::zeros(dm * dn, dm * dn);
    for j in 0..dn {
        for i in 0..dm {
            for k in 0..b.n {
                let mu = &n.degrees[j];
                let hk = b.shift(&zero, k as i64);
                let s1 = b.sigma(&hk, mu)?.inv()?;
                let s2 = b.sigma(&b.shift(&m.degrees[i], -(k as i64)), &b.shift(mu, k as i64))?.inv()?;
                let s = &(&b.antipode_inv(k) * &s1) * &s2;
                for r in 0..dn {
                    let xr = xs[k].get(r, j);
                    if xr.is_zero() {
                        continue;
                    }
                    for t in 0..dm {
                        let dt = m.coaction[k].get(t, i);
                        if dt.is_zero() {
                            continue;
                        }
                        let row = t * dn + r;
                        let colx = j * dm + i;
                        let v = out.get(row, colx) + &(&s * &(xr * dt));
                        out.set(row, colx, v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// c^{-1}∘c = id and c∘c^{-1} = id.
pub fn check_braiding_inverse(m: &YDModule, n: &YDModule) -> Result<bool> {
    let c = yd_braiding(m, n)?;
    let ci = yd_braiding_inverse(m, n)?;
    let id = Matrix::identity(c.rows);
    Ok(ci.mul(&c) == id && c.mul(&ci) == id)
}

/// x*x − q·xx* = 1 − ḡg on M, with x* acting through the Hopf pairing
/// and ḡg acting on degree λ by B(λ, γ).
pub fn linking_holds(m: &YDModule) -> Result<bool> {
    let x = &m.action;
    let y = m.dual_action();
    let lhs = y.mul(x).sub(&x.mul(y).scale(&m.base.q));
    let mut rhs = Matrix::identity(m.dim());
    for (j, l) in m.degrees.iter().enumerate() {
        rhs.set(j, j, CycNum::one() - m.base.monodromy(l)?);
    }
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingCase {
    pub module: String,
    pub yd: bool,
    pub linking: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingReport {
    pub p: u32,
    pub ok: bool,
    /// some module satisfies both sides and some satisfies neither
    pub both_directions: bool,
    pub cases: Vec<LinkingCase>,
}

fn degree1(base: &RankOne, t: Q) -> Result<Degree> {
    base.bichar.group().degree(vec![t], vec![])
}

/// The test family at q = e^{2πi/p}: trivial characters, V_0, all C_{λ,l}
/// with their induced structures, and perturbations of each.
pub fn linking_family(p: u32) -> Result<Vec<YDModule>> {
    let base = RankOne::singlet(p)?;
    let n = base.n;
    let mut out = vec![
        YDModule::trivial(&base, degree1(&base, Q::zero())?)?,
        YDModule::trivial(&base, degree1(&base, rat(1, 2))?)?,
        YDModule::verma(&base)?,
    ];
    let mut flipped = YDModule::verma(&base)?;
    flipped.action = flipped.action.scale(&CycNum::from_int(-1));
    flipped.name = "V0(-x)".into();
    out.push(flipped);
    let typical = rat(1, 3);
    for len in 1..=n {
        // B(λ, γ) = q^{1−l} closes the chain at length l
        let mut lambdas = vec![rat(1 - len as i64, 2)];
        if len == n {
            lambdas.push(typical.clone());
        }
        for l in lambdas {
            let deg = degree1(&base, l.clone())?;
            out.push(YDModule::induced_chain(&base, deg.clone(), len)?);
            if len < 2 {
                continue;
            }
            let a = YDModule::linking_coefficients(&base, &deg, len)?;
            let scaled: Vec<CycNum> = a.iter().map(|c| c * &CycNum::from_int(2)).collect();
            let mut m = YDModule::chain(&base, deg.clone(), &scaled)?;
            m.name = format!("{}*2x*", m.name);
            out.push(m);
            let mut m = YDModule::chain(&base, deg.clone(), &a)?;
            m.action = m.action.scale(&CycNum::from_int(3));
            m.name = format!("{}*3x", m.name);
            out.push(m);
            // coefficients of the chain at λ, placed at λ + 1/3
            let mut m = YDModule::chain(&base, degree1(&base, l + rat(1, 3))?, &a)?;
            m.name = format!("{}-shifted", m.name);
            out.push(m);
        }
    }
    Ok(out)
}

/// Checks that the YD condition and the linking relation agree on the family.
pub fn linking_from_yd(p: u32) -> Result<LinkingReport> {
    let cases = linking_family(p)?
        .iter()
        .map(|m| {
            Ok(LinkingCase { module: m.name.clone(), yd: yd_check(m)?.ok, linking: linking_holds(m)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let agree = cases.iter().all(|c| c.yd == c.linking);
    let both = cases.iter().any(|c| c.yd) && cases.iter().any(|c| !c.yd);
    Ok(LinkingReport { p, ok: agree && both, both_directions: both, cases })
}

/// λ is local over Λ iff e^{2πi(λ, α)} = 1 for all basis vectors α.
pub fn is_local_over(l: &Lattice, lambda: &[Q]) -> bool {
    l.basis.iter().all(|a| CycNum::exp_pi_i(&(int(2) * l.pair(lambda, a))).is_one())
}

/// A class in Γ/Λ: fractional lattice coordinates plus the part orthogonal to span Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub fractional: Vec<Q>,
    pub complement: Vec<Q>,
}

impl Coset {
    pub fn is_unit(&self) -> bool {
        self.fractional.iter().all(|x| x.is_zero()) && self.complement.iter().all(|x| x.is_zero())
    }

    /// The canonical ambient representative.
    pub fn representative(&self, l: &Lattice) -> Vec<Q> {
        let mut v = self.complement.clone();
        for (c, b) in self.fractional.iter().zip(&l.basis) {
            for (x, y) in v.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "fractional": self.fractional.iter().map(fmt_rational).collect::<Vec<_>>(),
            "complement": self.complement.iter().map(fmt_rational).collect::<Vec<_>>(),
        })
    }
}

fn split(l: &Lattice, lambda: &[Q]) -> Result<(Vec<Q>, Vec<Q>)> {
    if lambda.len() != l.ambient_dim() {
        return invalid("degree has the wrong dimension");
    }
    let gi = l.gram().inverse().map_err(|_| Error::Degenerate("Gram matrix is singular".into()))?;
    let pairs: Vec<Q> = l.basis.iter().map(|b| l.pair(lambda, b)).collect();
    let c = gi.apply(&pairs);
    let mut w = lambda.to_vec();
    for (ci, b) in c.iter().zip(&l.basis) {
        for (x, y) in w.iter_mut().zip(b) {
            *x -= ci * y;
        }
    }
    Ok((c, w))
}

/// The class of λ in Γ/Λ.
pub fn induce_over(l: &Lattice, lambda: &[Q]) -> Result<Coset> {
    let (c, w) = split(l, lambda)?;
    Ok(Coset { fractional: c.iter().map(|x| x - x.floor()).collect(), complement: w })
}

/// {α ∈ Λ : (α, α) ∈ 2Z}; Λ must be integral.
pub fn even_sublattice(l: &Lattice) -> Result<Lattice> {
    if !l.is_integral() {
        return invalid("lattice is not integral");
    }
    let odd = |v: &[Q]| !(l.pair(v, v) / int(2)).is_integer();
    let Some(k) = l.basis.iter().position(|b| odd(b)) else {
        return Ok(l.clone());
    };
    let bk = l.basis[k].clone();
    let basis = l
        .basis
        .iter()
        .enumerate()
        .map(|(i, b)| {
            if i == k {
                bk.iter().map(|x| x * int(2)).collect()
            } else if odd(b) {
                b.iter().zip(&bk).map(|(x, y)| x + y).collect()
            } else {
                b.clone()
            }
        })
        .collect();
    Lattice::new(l.form.clone(), basis)
}

/// Which extension of the base to report: local modules (Λ*/Λ) or all modules (Γ/Λ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UprollTarget {
    Local,
    All,
}

#[derive(Clone, Debug)]
pub struct InducedGenerator {
    pub degree: Vec<Q>,
    pub class: Coset,
    pub representative: Vec<Q>,
    /// residues in the discriminant group when Λ is full rank and even
    pub residue: Option<Vec<i64>>,
    pub self_braiding: CycNum,
    pub induced_self_braiding: Option<CycNum>,
}

#[derive(Clone, Debug)]
pub struct UprollSpec {
    pub x: BraidedObject,
    pub lattice: Lattice,
    pub target: UprollTarget,
    pub discriminant: Option<DiscriminantForm>,
    pub generators: Vec<InducedGenerator>,
    pub monodromies_preserved: bool,
    pub self_braidings_preserved: Option<bool>,
}

fn ambient(x: &BraidedObject, r: &Lattice) -> Result<()> {
    let g = x.bichar.group();
    if !g.torsion.is_empty() || g.free_rank != r.ambient_dim() {
        return invalid("uprolling needs a free grading group matching the lattice ambient space");
    }
    if x.bichar.exponents() != r.form.as_slice() {
        return invalid("the lattice form differs from the braiding form");
    }
    Ok(())
}

/// Induces the generator degrees of X along the lattice algebra R.
pub fn uproll(x: &BraidedObject, r: &Lattice, target: UprollTarget) -> Result<UprollSpec> {
    ambient(x, r)?;
    let degs: Vec<Vec<Q>> = x.degrees.iter().map(|d| d.coords()).collect();
    for (i, g) in degs.iter().enumerate() {
        for (k, a) in r.basis.iter().enumerate() {
            let ad = x.bichar.group().degree(a.clone(), vec![])?;
            let b = x.bichar.monodromy(&x.degrees[i], &ad)?;
            if !b.is_one() {
                return Err(Error::CheckFailed(format!(
                    "monodromy of (gamma_{i} = {}, alpha_{k} = {ad}) is {}, not 1",
                    x.degrees[i],
                    b.root_label().unwrap_or_else(|| b.to_text())
                )));
            }
            debug_assert!(r.pair(g, a).is_integer());
        }
    }
    if !r.is_integral() {
        return invalid("R is not an integral lattice, so it is not a commutative algebra");
    }
    let reduce = match target {
        UprollTarget::Local => even_sublattice(r)?,
        UprollTarget::All => r.clone(),
    };
    let full_even = r.rank() == r.ambient_dim() && r.is_even();
    let discriminant = if target == UprollTarget::Local && full_even { Some(r.discriminant_form()?) } else { None };
    let mut gens = Vec::new();
    for (i, g) in degs.iter().enumerate() {
        let class = induce_over(&reduce, g)?;
        let rep = class.representative(&reduce);
        let self_b = x.bichar.braiding_value(&x.degrees[i], &x.degrees[i])?;
        let residue = match &discriminant {
            Some(d) => Some(d.class_of(g)?),
            None => None,
        };
        let induced = match (&discriminant, &residue, target) {
            (Some(d), Some(k), _) => Some(d.quadratic_form(k)),
            (_, _, UprollTarget::Local) => Some(CycNum::exp_pi_i(&r.pair(&rep, &rep))),
            _ => None,
        };
        gens.push(InducedGenerator {
            degree: g.clone(),
            class,
            representative: rep,
            residue,
            self_braiding: self_b,
            induced_self_braiding: induced,
        });
    }
    let mut mono_ok = true;
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            let before = x.bichar.monodromy(&x.degrees[i], &x.degrees[j])?;
            let after = match (&discriminant, &gens[i].residue, &gens[j].residue) {
                (Some(d), Some(a), Some(b)) => d.monodromy(a, b),
                _ => CycNum::exp_pi_i(&(int(2) * r.pair(&gens[i].representative, &gens[j].representative))),
            };
            mono_ok &= before == after;
        }
    }
    let self_ok = match target {
        UprollTarget::Local => {
            Some(gens.iter().all(|g| g.induced_self_braiding.as_ref() == Some(&g.self_braiding)))
        }
        UprollTarget::All => None,
    };
    Ok(UprollSpec {
        x: x.clone(),
        lattice: r.clone(),
        target,
        discriminant,
        generators: gens,
        monodromies_preserved: mono_ok,
        self_braidings_preserved: self_ok,
    })
}

impl UprollSpec {
    pub fn group_label(&self) -> Option<String> {
        self.discriminant.as_ref().map(|d| d.group.label())
    }

    /// The braiding matrix of the induced generators in the quotient grading,
    /// evaluated on the quotient's own representatives.
    pub fn quotient_braid_matrix(&self) -> Vec<Vec<CycNum>> {
        let n = self.generators.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (a, b) = (&self.generators[i], &self.generators[j]);
                        match (&self.discriminant, &a.residue, &b.residue) {
                            (Some(d), Some(ka), Some(kb)) => d.braiding_value(ka, kb),
                            _ => CycNum::exp_pi_i(&self.lattice.pair(&a.representative, &b.representative)),
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Nichols dimensions in every multidegree agree before and after.
    pub fn nichols_preserved(&self, cfg: &NicholsConfig) -> Result<bool> {
        let before = NicholsData::compute(&self.x, cfg)?;
        let after = NicholsData::from_matrix(self.quotient_braid_matrix(), cfg)?;
        Ok(before.hilbert == after.hilbert
            && before.components.len() == after.components.len()
            && before.components.iter().all(|(d, c)| after.components.get(d).map(|c| c.dim()) == Some(c.dim())))
    }

    pub fn ok(&self) -> bool {
        self.monodromies_preserved && self.self_braidings_preserved != Some(false)
    }

    pub fn to_json(&self) -> Value {
        let strs = |v: &[Q]| v.iter().map(fmt_rational).collect::<Vec<_>>();
        let cyc = |c: &CycNum| c.root_label().unwrap_or_else(|| c.to_text());
        json!({
            "target": self.target,
            "group": self.group_label(),
            "free_rank": self.lattice.ambient_dim() - self.lattice.rank(),
            "generators": self.generators.iter().map(|g| json!({
                "degree": strs(&g.degree),
                "class": g.class.to_json(),
                "representative": strs(&g.representative),
                "residue": g.residue,
                "self_braiding": cyc(&g.self_braiding),
                "induced_self_braiding": g.induced_self_braiding.as_ref().map(cyc),
            })).collect::<Vec<_>>(),
            "monodromies_preserved": self.monodromies_preserved,
            "self_braidings_preserved": self.self_braidings_preserved,
        })
    }
}

/// Uprolling data in the target coordinates of the free-field realizations.
pub mod presets {
    use super::*;

    fn object(form: Vec<Vec<Q>>, degree: Vec<Q>) -> Result<BraidedObject> {
        let b = Bicharacter::from_form(&form)?;
        let d = b.group().degree(degree, vec![])?;
        BraidedObject::new(b, vec![d])
    }

    /// Singlet → triplet: x in degree α_- (units of α_-, (α_-, α_-) = 2/p), R = α_+Z.
    pub fn triplet(p: u32) -> Result<(BraidedObject, Lattice)> {
        let l = Lattice::triplet(p)?;
        Ok((object(l.form.clone(), vec![int(1)])?, l))
    }

    /// R = (α_+/4)Z, whose monodromy with x is −1.
    pub fn violating(p: u32) -> Result<(BraidedObject, Lattice)> {
        let (x, l) = triplet(p)?;
        let l = Lattice::new(l.form, vec![vec![rat(-(p as i64), 4)]])?;
        Ok((x, l))
    }

    /// S(p), coordinates (ε, γ): σ = (−1)^{fg} q^{(2−p)λμ}, x in (−1, 1), R = εZ.
    pub fn sp(p: u32) -> Result<(BraidedObject, Lattice)> {
        if p < 3 {
            return invalid("S(p) needs p >= 3");
        }
        let p = p as i64;
        let form = vec![vec![int(1), int(0)], vec![int(0), rat(2 - p, p)]];
        let l = Lattice::new(form.clone(), vec![vec![int(1), int(0)]])?;
        Ok((object(form, vec![int(-1), int(1)])?, l))
    }

    /// gl(1|1), coordinates (ε, B, A): σ = (−1)^{fg} q^{−ba'−ab'−ħbb'}, q = e^{πiħ},
    /// x in (−1, 0, −1), R = εZ.
    pub fn gl11(hbar: &Q) -> Result<(BraidedObject, Lattice)> {
        if hbar.is_zero() {
            return invalid("hbar must be nonzero");
        }
        let z = Q::zero();
        let form = vec![
            vec![int(1), z.clone(), z.clone()],
            vec![z.clone(), -(hbar * hbar), -hbar.clone()],
            vec![z.clone(), -hbar.clone(), z.clone()],
        ];
        let l = Lattice::new(form.clone(), vec![vec![int(1), z.clone(), z.clone()]])?;
        Ok((object(form, vec![int(-1), z, int(-1)])?, l))
    }

    pub fn by_name(name: &str, p: u32, hbar: &Q) -> Result<(BraidedObject, Lattice)> {
        match name {
            "triplet" => triplet(p),
            "sp" | "S(p)" => sp(p),
            "gl11" => gl11(hbar),
            "violating" => violating(p),
            other => invalid(format!("unknown uproll preset {other:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn module_spec_roundtrip() {
        for m in linking_family(3).unwrap() {
            let spec = YdModuleSpec::from_module(&m);
            let text = serde_json::to_string(&spec).unwrap();
            let back: YdModuleSpec = serde_json::from_str(&text).unwrap();
            let b = back.build().unwrap();
            assert_eq!(b.action, m.action);
            assert_eq!(b.coaction, m.coaction);
            assert_eq!(b.degrees, m.degrees);
            assert_eq!(yd_check(&b).unwrap(), yd_check(&m).unwrap());
        }
    }

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k).unwrap()
    }

    fn deg(b: &RankOne, t: Q) -> Degree {
        degree1(b, t).unwrap()
    }

    #[test]
    fn trivial_structure_needs_trivial_monodromy() {
        for p in 2..=4 {
            let b = RankOne::singlet(p).unwrap();
            assert!(yd_check(&YDModule::trivial(&b, deg(&b, Q::zero())).unwrap()).unwrap().ok);
            // λ = p/2 is local: B = e^{2πi·(2/p)(p/2)} = 1
            assert!(yd_check(&YDModule::trivial(&b, deg(&b, rat(p as i64, 2))).unwrap()).unwrap().ok);
            let r = yd_check(&YDModule::trivial(&b, deg(&b, rat(1, 2))).unwrap()).unwrap();
            assert!(!r.ok);
            assert_eq!(r.violation, Some(YdViolation { power: 1, basis: 0, component: 1 }));
        }
    }

    #[test]
    fn verma_is_yd() {
        for p in 2..=5 {
            let b = RankOne::singlet(p).unwrap();
            let v = YDModule::verma(&b).unwrap();
            assert_eq!(v.check_axioms(), None);
            assert!(yd_check(&v).unwrap().ok, "p = {p}");
        }
    }

    #[test]
    fn sign_flipped_action_fails_at_generator() {
        for p in 3..=5 {
            let b = RankOne::singlet(p).unwrap();
            let mut v = YDModule::verma(&b).unwrap();
            v.action = v.action.scale(&CycNum::from_int(-1));
            let r = yd_check(&v).unwrap();
            assert!(!r.ok);
            assert_eq!(r.violation.unwrap().power, 1);
        }
        // at p = 2 the adjoint action vanishes, so the flip changes nothing
        let b = RankOne::singlet(2).unwrap();
        assert!(YDModule::verma(&b).unwrap().action.is_zero());
    }

    #[test]
    fn broken_coaction_is_reported() {
        let b = RankOne::singlet(3).unwrap();
        let mut v = YDModule::verma(&b).unwrap();
        v.coaction[2] = v.coaction[2].scale(&CycNum::from_int(5));
        let r = yd_check(&v).unwrap();
        assert!(!r.ok);
        assert!(r.axioms.unwrap().contains("coassociativity"));
    }

    #[test]
    fn trivial_braiding_is_base_braiding() {
        let b = RankOne::singlet(3).unwrap();
        let (l, m) = (deg(&b, rat(1, 5)), deg(&b, rat(-2, 7)));
        let c = yd_braiding(&YDModule::trivial(&b, l.clone()).unwrap(), &YDModule::trivial(&b, m.clone()).unwrap())
            .unwrap();
        assert_eq!(c.get(0, 0), &b.bichar.braiding_value(&l, &m).unwrap());
    }

    #[test]
    fn braiding_hand_oracle_p2() {
        // p = 2: q = −1, V_0 = span{1, x} in degrees 0, γ; M = C(−1/2, 2) with
        // x·m0 = m1 and x*·m1 = a m0, a = 1 − B(−1/2, γ) = 2.
        let b = RankOne::singlet(2).unwrap();
        let v = YDModule::verma(&b).unwrap();
        let m = YDModule::induced_chain(&b, deg(&b, rat(-1, 2)), 2).unwrap();
        assert_eq!(m.dual_action().get(0, 1), &CycNum::from_int(2));
        let c = yd_braiding(&v, &m).unwrap();
        // σ(λ, μ) = e^{πi λμ} with (γ, γ) = 1 at p = 2
        let s = |a: Q, c: Q| CycNum::exp_pi_i(&(a * c));
        let mut want = Matrix::zeros(4, 4);
        // rows: m_r ⊗ e_t → 2r + t; cols: e_i ⊗ m_j → 2i + j
        want.set(0, 0, s(int(0), rat(-1, 2))); // e0⊗m0 → m0⊗e0
        want.set(2, 1, s(int(0), rat(1, 2))); // e0⊗m1 → m1⊗e0
        want.set(1, 2, s(int(1), rat(-1, 2))); // e1⊗m0 → σ m0⊗e1 + x·m0 ⊗ e0
        want.set(2, 2, CycNum::one());
        want.set(3, 3, s(int(1), rat(1, 2))); // e1⊗m1 → σ m1⊗e1 (x·m1 = 0)
        assert_eq!(c, want);
        assert_eq!(c.get(1, 2), &z(4, -1));
        assert!(check_braiding_inverse(&v, &m).unwrap());
    }

    #[test]
    fn braiding_inverse_on_family() {
        for p in 2..=3 {
            let fam: Vec<YDModule> =
                linking_family(p).unwrap().into_iter().filter(|m| yd_check(m).unwrap().ok).collect();
            for a in &fam {
                for c in &fam {
                    assert!(check_braiding_inverse(a, c).unwrap(), "{} {}", a.name, c.name);
                }
            }
        }
    }

    #[test]
    fn linking_equivalence() {
        for p in 2..=4 {
            let r = linking_from_yd(p).unwrap();
            for c in &r.cases {
                assert_eq!(c.yd, c.linking, "p = {p}: {}", c.module);
            }
            assert!(r.ok && r.both_directions);
        }
    }

    #[test]
    fn induced_chains_are_yd() {
        let b = RankOne::singlet(4).unwrap();
        for len in 1..=4usize {
            let m = YDModule::induced_chain(&b, deg(&b, rat(1 - len as i64, 2)), len).unwrap();
            assert!(yd_check(&m).unwrap().ok);
        }
        // wrong closing weight: the chain of length 2 at λ = 0 violates the top relation
        let m = YDModule::induced_chain(&b, deg(&b, Q::zero()), 2).unwrap();
        assert!(!linking_holds(&m).unwrap());
        assert!(!yd_check(&m).unwrap().ok);
    }

    #[test]
    fn locality_examples() {
        let l = Lattice::new(vec![vec![int(1)]], vec![vec![int(2)]]).unwrap();
        assert!(is_local_over(&l, &[rat(1, 2)]));
        assert!(!is_local_over(&l, &[rat(1, 3)]));
        assert!(induce_over(&l, &[int(4)]).unwrap().is_unit());
        assert!(is_local_over(&l, &[int(-6)]));
        let c = induce_over(&l, &[rat(7, 3)]).unwrap();
        assert_eq!(c.fractional, vec![rat(1, 6)]);
        assert_eq!(c.representative(&l), vec![rat(1, 3)]);
    }

    #[test]
    fn triplet_degree() {
        for p in 2..=6 {
            let (x, r) = presets::triplet(p).unwrap();
            let u = uproll(&x, &r, UprollTarget::Local).unwrap();
            assert_eq!(u.group_label().unwrap(), format!("Z{}", 2 * p));
            assert_eq!(u.generators[0].residue, Some(vec![2 * p as i64 - 2]));
            assert!(u.ok());
            assert_eq!(u.generators[0].self_braiding, z(p, 1));
        }
    }

    #[test]
    fn triplet_nichols_dims_survive() {
        let cfg = NicholsConfig { max_degree: 6, ..Default::default() };
        for p in 2..=3 {
            let (x, r) = presets::triplet(p).unwrap();
            let u = uproll(&x, &r, UprollTarget::Local).unwrap();
            assert!(u.nichols_preserved(&cfg).unwrap());
        }
    }

    #[test]
    fn gl11_and_sp_degrees() {
        for h in [rat(1, 3), rat(2, 5), rat(-1, 7)] {
            let (x, r) = presets::gl11(&h).unwrap();
            let u = uproll(&x, &r, UprollTarget::Local).unwrap();
            let g = &u.generators[0];
            assert_eq!(g.degree, vec![int(-1), int(0), int(-1)]);
            assert_eq!(g.self_braiding, CycNum::from_int(-1));
            assert_eq!(g.induced_self_braiding, Some(CycNum::from_int(-1)));
            assert!(u.ok());
            // reducing modulo all of R forgets the parity
            let a = uproll(&x, &r, UprollTarget::All).unwrap();
            assert_eq!(a.generators[0].representative, vec![int(0), int(0), int(-1)]);
        }
        for p in 3..=6 {
            let (x, r) = presets::sp(p).unwrap();
            let u = uproll(&x, &r, UprollTarget::Local).unwrap();
            assert_eq!(u.generators[0].self_braiding, z(p, 1));
            assert!(u.ok());
        }
    }

    #[test]
    fn violating_lattice_rejected() {
        for p in 2..=5 {
            let (x, r) = presets::violating(p).unwrap();
            match uproll(&x, &r, UprollTarget::Local) {
                Err(Error::CheckFailed(m)) => assert!(m.contains("gamma_0") && m.contains("alpha_0")),
                other => panic!("expected rejection, got {other:?}"),
            }
        }
        // α_+/2 pairs integrally with α_-, so it passes the monodromy test
        let (x, _) = presets::triplet(4).unwrap();
        let half = Lattice::new(vec![vec![rat(2, 4)]], vec![vec![int(-2)]]).unwrap();
        assert!(uproll(&x, &half, UprollTarget::Local).is_ok());
    }

    #[test]
    fn mismatched_form_rejected() {
        let (x, _) = presets::triplet(3).unwrap();
        let other = Lattice::new(vec![vec![int(1)]], vec![vec![int(2)]]).unwrap();
        assert!(matches!(uproll(&x, &other, UprollTarget::Local), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn even_sublattice_index_two() {
        let l = Lattice::new(
            vec![vec![int(1), int(0)], vec![int(0), int(1)]],
            vec![vec![int(1), int(0)], vec![int(0), int(1)]],
        )
        .unwrap();
        let e = even_sublattice(&l).unwrap();
        assert!(e.is_even());
        assert_eq!(e.gram().det(), int(4));
    }

    proptest! {
        #[test]
        fn locality_matches_dual(n in -40i64..40, d in 1i64..13, p in 2u32..7) {
            let l = Lattice::triplet(p).unwrap();
            let v = vec![rat(n, d)];
            prop_assert_eq!(is_local_over(&l, &v), l.dual().unwrap().contains(&v));
        }

        #[test]
        fn induce_is_idempotent(n in -40i64..40, d in 1i64..13) {
            let l = Lattice::new(vec![vec![int(1)]], vec![vec![int(3)]]).unwrap();
            let c = induce_over(&l, &[rat(n, d)]).unwrap();
            let rep = c.representative(&l);
            prop_assert_eq!(induce_over(&l, &rep).unwrap(), c.clone());
            prop_assert!(l.contains(&[rat(n, d) - &rep[0]]));
        }

        #[test]
        fn trivial_yd_iff_local(n in -12i64..12, d in 1i64..7, p in 2u32..5) {
            let b = RankOne::singlet(p).unwrap();
            let l = deg(&b, rat(n, d));
            let local = b.monodromy(&l).unwrap().is_one();
            prop_assert_eq!(yd_check(&YDModule::trivial(&b, l).unwrap()).unwrap().ok, local);
        }
    }
}

//! Explicit conjugacy witnesses between Petrie matrices.
//!
//! Each builder follows a concrete basis recipe, assembles the matrix `H`
//! whose row `i` holds the coordinates of `h(J_i)`, and checks the
//! intertwining identity exactly before handing the witness out.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{solve_rational, IntMatrix, RatMatrix};
use crate::error::{precondition, Error, Result};
use crate::extensions::{right_extend, right_specs, two_sided_extend, two_sided_specs, RightExtensionSpec, TwoSidedExtensionSpec};
use crate::families::{family_thm12, family_thm13};
use crate::perm::{Permutation, PointMap};
use crate::petrie::{basis_matrix, interval_element, petrie_matrix, BasisMatrix, IntervalVector};
use crate::report::SCHEMA_VERSION;
use crate::sim::{ExtensionBound, Mode};

/// Which side of the pair `h` intertwines from.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `h ∘ φ_ρ = φ_σ ∘ h`, i.e. `M_ρ·H = H·M_σ`.
    RhoSide,
    /// `h ∘ φ_σ = φ_ρ ∘ h`, i.e. `M_σ·H = H·M_ρ`.
    SigmaSide,
}

/// A conjugacy `H` between the Petrie matrices of `sigma` and `rho`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ConjugacyWitness {
    pub schema_version: u32,
    pub theorem: String,
    pub params: BTreeMap<String, Value>,
    pub sigma: Permutation,
    pub rho: Permutation,
    pub relation: Relation,
    #[serde(rename = "H")]
    pub h: RatMatrix,
    pub verified: bool,
}

impl ConjugacyWitness {
    /// Builds and verifies; a failed check is reported as [`Error::Unverified`].
    pub fn new(
        theorem: impl Into<String>,
        params: BTreeMap<String, Value>,
        sigma: Permutation,
        rho: Permutation,
        relation: Relation,
        h: RatMatrix,
    ) -> Result<Self> {
        let mut w = Self { schema_version: SCHEMA_VERSION, theorem: theorem.into(), params, sigma, rho, relation, h, verified: false };
        if !w.check()? {
            return Err(Error::Unverified(format!("{} witness fails {:?}", w.theorem, w.relation)));
        }
        w.verified = true;
        Ok(w)
    }

    /// Recomputes the identity from scratch, ignoring the stored flag.
    pub fn check(&self) -> Result<bool> {
        let ms = petrie_matrix(&self.sigma)?;
        let mr = petrie_matrix(&self.rho)?;
        match self.relation {
            Relation::RhoSide => verify_conjugacy(&self.h, &ms, &mr),
            Relation::SigmaSide => verify_conjugacy(&self.h, &mr, &ms),
        }
    }

    pub fn det(&self) -> BigRational {
        self.h.det().expect("square")
    }

    /// `M_ρ·H = H·M_σ` form, inverting `H` if the witness was built the other way.
    pub fn rho_side(&self) -> Result<RatMatrix> {
        match self.relation {
            Relation::RhoSide => Ok(self.h.clone()),
            Relation::SigmaSide => self.h.inverse(),
        }
    }

    /// Composes `self: σ → ρ` with `next: ρ → τ` into a witness `σ → τ`.
    pub fn chain(&self, next: &ConjugacyWitness) -> Result<ConjugacyWitness> {
        if self.rho != next.sigma {
            return Err(precondition("chained witnesses must share the middle permutation"));
        }
        let h = next.rho_side()?.mul(&self.rho_side()?)?;
        let mut params = BTreeMap::new();
        params.insert("first".into(), json!({"theorem": self.theorem, "params": self.params}));
        params.insert("second".into(), json!({"theorem": next.theorem, "params": next.params}));
        Self::new("chain", params, self.sigma.clone(), next.rho.clone(), Relation::RhoSide, h)
    }
}

/// `true` iff `H` is invertible and `M_ρ·H = H·M_σ`.
pub fn verify_conjugacy(h: &RatMatrix, m_sigma: &IntMatrix, m_rho: &IntMatrix) -> Result<bool> {
    let n = m_sigma.dim();
    if m_rho.dim() != n {
        return Err(Error::DimensionMismatch { left: n, right: m_rho.dim() });
    }
    if h.nrows() != n || h.ncols() != n {
        return Err(Error::DimensionMismatch { left: n, right: h.nrows().max(h.ncols()) });
    }
    if h.det()?.is_zero() {
        return Ok(false);
    }
    Ok(m_rho.to_rat().mul(h)? == h.mul(&m_sigma.to_rat())?)
}

struct Phi {
    m: RatMatrix,
    dim: usize,
}

impl Phi {
    fn of(p: &Permutation) -> Result<Self> {
        let m = petrie_matrix(p)?;
        Ok(Self { dim: m.dim(), m: m.to_rat() })
    }

    fn pow(&self, v: &IntervalVector, times: usize) -> IntervalVector {
        (0..times).fold(v.clone(), |acc, _| acc.times(&self.m).expect("dimension fixed"))
    }

    fn j(&self, i: usize) -> IntervalVector {
        IntervalVector::basis(i, self.dim).expect("index in range")
    }

    /// `Σ_{i=lo}^{hi} J_i`.
    fn span(&self, lo: usize, hi: usize) -> IntervalVector {
        interval_element(lo, hi + 1, self.dim).expect("range in bounds")
    }

    fn interval(&self, a: usize, b: usize) -> IntervalVector {
        interval_element(a, b, self.dim).expect("range in bounds")
    }
}

fn stack(rows: Vec<IntervalVector>) -> Result<RatMatrix> {
    Ok(basis_matrix(rows)?.as_rat_matrix())
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

// ---------------------------------------------------------------------------
// basis S = {J_1..J_m, J_{m+1}+J_{m+2}, J_{m+3}, φ_ρ(J_{m+3})..φ_ρ(J_{m+n+3})}, h(S_r) = J_r

/// Parameters of a pair in the shape of the basic construction: `σ` lifts
/// `m+2 → m+3 → m+4`, `ρ` swaps the roles of `m+1, …, m+4` at `s` and `t`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Thm7Shape {
    pub m: usize,
    pub n: usize,
    pub s: usize,
    pub t: Option<usize>,
}

/// Builds `(σ, ρ)` on `P_{m+n+4}` and their witness. `low_filler` lists the
/// images (a permutation of `1..=m`) of `{1..m+1} \ {s}` in increasing order;
/// `high_filler` lists the images (a permutation of `m+5..=m+n+4`) of
/// `{m+4..m+n+4} \ {t}`.
pub fn build_thm7(
    m: usize,
    n: usize,
    s: usize,
    t: Option<usize>,
    low_filler: &[usize],
    high_filler: &[usize],
) -> Result<(Permutation, Permutation, ConjugacyWitness)> {
    if m < 1 {
        return Err(precondition("m must be at least 1"));
    }
    if s < 1 || s > m {
        return Err(precondition(format!("s = {s} outside 1..={m}")));
    }
    let total = m + n + 4;
    let mut sigma = vec![0; total + 1];
    let mut rho = vec![0; total + 1];
    sigma[s] = m + 2;
    sigma[m + 2] = m + 3;
    sigma[m + 3] = m + 4;
    rho[s] = m + 3;
    rho[m + 2] = m + 1;
    rho[m + 3] = m + 4;
    check_filler(low_filler, 1, m, "low")?;
    for (i, &v) in (1..=m + 1).filter(|&i| i != s).zip(low_filler) {
        sigma[i] = v;
        rho[i] = v;
    }
    match (n, t) {
        (0, None) => {
            sigma[m + 4] = m + 1;
            rho[m + 4] = m + 2;
            check_filler(high_filler, m + 5, m + 4, "high")?;
        }
        (0, Some(_)) => return Err(precondition("t must be absent when n = 0")),
        (_, None) => return Err(precondition("t is required when n >= 1")),
        (_, Some(t)) => {
            if t < m + 5 || t > total {
                return Err(precondition(format!("t = {t} outside {}..={total}", m + 5)));
            }
            sigma[t] = m + 1;
            rho[t] = m + 2;
            check_filler(high_filler, m + 5, total, "high")?;
            for (j, &v) in (m + 4..=total).filter(|&j| j != t).zip(high_filler) {
                sigma[j] = v;
                rho[j] = v;
            }
        }
    }
    let sigma = Permutation::new(sigma[1..].to_vec())?;
    let rho = Permutation::new(rho[1..].to_vec())?;
    let w = thm7_witness(&sigma, &rho)?;
    Ok((sigma, rho, w))
}

fn check_filler(f: &[usize], lo: usize, hi: usize, name: &str) -> Result<()> {
    let mut v = f.to_vec();
    v.sort_unstable();
    if v != (lo..=hi).collect::<Vec<_>>() {
        return Err(precondition(format!("{name} filler must be a permutation of {lo}..={hi}")));
    }
    Ok(())
}

/// Recognises the shape, trying every admissible `m`.
pub fn detect_thm7(sigma: &Permutation, rho: &Permutation) -> Option<Thm7Shape> {
    let total = sigma.degree();
    if rho.degree() != total || total < 5 {
        return None;
    }
    (1..=total - 4).find_map(|m| {
        let n = total - m - 4;
        if sigma.image(m + 2) != m + 3 || sigma.image(m + 3) != m + 4 {
            return None;
        }
        let s = (1..=m).find(|&i| sigma.image(i) == m + 2)?;
        if (1..=m + 1).any(|i| i != s && sigma.image(i) > m) {
            return None;
        }
        let t = if n == 0 {
            (sigma.image(m + 4) == m + 1).then_some(None)?
        } else {
            let t = (m + 5..=total).find(|&j| sigma.image(j) == m + 1)?;
            if (m + 4..=total).any(|j| j != t && sigma.image(j) < m + 5) {
                return None;
            }
            Some(t)
        };
        let expect = |i: usize| match i {
            _ if i == m + 2 => m + 1,
            _ if i == m + 3 => m + 4,
            _ if i == s => m + 3,
            _ if Some(i) == t || (t.is_none() && i == m + 4) => m + 2,
            _ => sigma.image(i),
        };
        (1..=total).all(|i| rho.image(i) == expect(i)).then_some(Thm7Shape { m, n, s, t })
    })
}

/// Witness for a pair already in the basic shape.
pub fn thm7_witness(sigma: &Permutation, rho: &Permutation) -> Result<ConjugacyWitness> {
    let shape = detect_thm7(sigma, rho).ok_or_else(|| precondition("pair is not in the basic lifting shape"))?;
    let Thm7Shape { m, n, s, t } = shape;
    let phi = Phi::of(rho)?;
    let mut rows: Vec<IntervalVector> = (1..=m).map(|i| phi.j(i)).collect();
    rows.push(phi.span(m + 1, m + 2));
    rows.push(phi.j(m + 3));
    rows.extend((m + 3..=m + n + 3).map(|i| phi.pow(&phi.j(i), 1)));
    let s_mat = stack(rows)?;
    let h = s_mat.inverse()?;
    let p = params(&[("m", json!(m)), ("n", json!(n)), ("s", json!(s)), ("t", json!(t))]);
    ConjugacyWitness::new("basic-lift", p, sigma.clone(), rho.clone(), Relation::RhoSide, h)
}

/// Witness `σ_{3,k} → σ_{k-1,k}` chained through consecutive `σ_{i,k} → σ_{i+1,k}` steps.
pub fn sigma_nk_chain(k: usize, from: usize, to: usize) -> Result<ConjugacyWitness> {
    if from < 3 || to > k - 1 || from >= to {
        return Err(precondition("need 3 <= from < to <= k-1"));
    }
    let mut acc: Option<ConjugacyWitness> = None;
    for i in from..to {
        let m = i - 2;
        let n = k - i - 2;
        let t = (n >= 1).then_some(k);
        let low: Vec<usize> = (1..=m).collect();
        let high: Vec<usize> = (m + 5..=m + n + 4).collect();
        let (_, _, w) = build_thm7(m, n, 1, t, &low, &high)?;
        acc = Some(match acc {
            None => w,
            Some(prev) => prev.chain(&w)?,
        });
    }
    Ok(acc.expect("from < to"))
}

// ---------------------------------------------------------------------------
// interval-iterate bases

/// The basis `{Σ_{i<k} J_i, [k, μ(k)], φ_μ^i([k, μ(k)]) (1 <= i <= k-3), φ_μ^{k-2}(J_i) (k <= i < k+n)}`.
pub fn build_lemma9_basis(mu: &Permutation, k: usize) -> Result<BasisMatrix> {
    let total = mu.degree();
    if k < 3 {
        return Err(Error::DegreeTooSmall { min: 3, got: k });
    }
    if total < k + 3 {
        return Err(precondition("need n >= 3 points beyond k"));
    }
    if (2..k).any(|i| mu.image(i) != i - 1) {
        return Err(precondition("need μ(i) = i-1 for 2 <= i <= k-1"));
    }
    if !(mu.image(1) == k && k < mu.image(k)) {
        return Err(precondition("need μ(1) = k < μ(k)"));
    }
    let phi = Phi::of(mu)?;
    let dim = phi.dim;
    let top = phi.interval(k, mu.image(k));
    let mut rows = vec![phi.span(1, k - 1)];
    rows.extend((0..=k - 3).map(|i| phi.pow(&top, i)));
    rows.extend((k..=dim).map(|i| phi.pow(&phi.j(i), k - 2)));
    let s = basis_matrix(rows)?;
    if phi.span(1, k - 1) != phi.pow(&phi.j(k - 2), k - 2) {
        return Err(Error::Unverified("Σ J_i differs from φ^{k-2}(J_{k-2})".into()));
    }
    if !s.det().abs().is_one() {
        return Err(Error::Unverified(format!("basis determinant is {}", s.det())));
    }
    // same lattice as {φ^{k-2}(J_i)}: the change of basis is unimodular
    let t = stack((1..=dim).map(|i| phi.pow(&phi.j(i), k - 2)).collect())?;
    let change = s.as_rat_matrix().mul(&t.inverse()?)?;
    if !change.is_integral() || !change.det()?.abs().is_one() {
        return Err(Error::Unverified("basis does not span the iterate lattice".into()));
    }
    Ok(s)
}

/// Clauses (a)–(e) of the interval-shift construction for `(σ_k, ρ_k)` at
/// split point `j`; returns the slot `s`.
pub fn check_thm10_clauses(sigma: &Permutation, rho: &Permutation, j: usize) -> Result<usize> {
    let k = sigma.degree();
    if rho.degree() != k {
        return Err(Error::DegreeMismatch { left: k, right: rho.degree() });
    }
    if !(3 <= j && j < k) {
        return Err(precondition(format!("need 3 <= j < k, got j = {j}, k = {k}")));
    }
    let s = (1..=j - 2)
        .find(|&s| sigma.image(s) == j && rho.image(s) == k)
        .ok_or_else(|| precondition("clause (a): no s <= j-2 with σ(s) = j, ρ(s) = k"))?;
    if (1..j).any(|x| x != s && (sigma.image(x) != rho.image(x) || sigma.image(x) > j - 1)) {
        return Err(precondition("clause (b): σ and ρ must agree below j-1 off s"));
    }
    if (j..k).any(|x| sigma.image(x) != x + 1) {
        return Err(precondition("clause (c): σ(x) = x+1 on j..k-1"));
    }
    if (j + 1..=k).any(|x| rho.image(x) != x - 1) {
        return Err(precondition("clause (d): ρ(x) = x-1 on j+1..k"));
    }
    let (a, b) = (sigma.image(j - 1), sigma.image(k));
    if !(a == rho.image(j - 1) && b == rho.image(j) && a < b && b < j) {
        return Err(precondition("clause (e): need σ(j-1) = ρ(j-1) < σ(k) = ρ(j) <= j-1"));
    }
    Ok(s)
}

/// The split point `j` for which clauses (a)–(e) hold, if any.
pub fn detect_thm10(sigma: &Permutation, rho: &Permutation) -> Option<usize> {
    let k = sigma.degree();
    (3..k).find(|&j| check_thm10_clauses(sigma, rho, j).is_ok())
}

/// How the tail rows `h(J_i)`, `k <= i < k+n`, are read.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Thm10Tail {
    /// `h(J_i) = φ_ρ^{k-j}(J_i)`.
    IndexI,
    /// `h(J_i) = φ_ρ^{k-j}(J_j)` for every tail row, as literally printed.
    IndexJ,
}

/// Witness for the synchronized right extension of a pair satisfying (a)–(e).
pub fn build_thm10(sigma: &Permutation, rho: &Permutation, j: usize, spec: &RightExtensionSpec) -> Result<ConjugacyWitness> {
    build_thm10_variant(sigma, rho, j, spec, Thm10Tail::IndexI)
}

pub fn build_thm10_variant(
    sigma: &Permutation,
    rho: &Permutation,
    j: usize,
    spec: &RightExtensionSpec,
    tail: Thm10Tail,
) -> Result<ConjugacyWitness> {
    let s = check_thm10_clauses(sigma, rho, j)?;
    let k = sigma.degree();
    let se = right_extend(sigma, spec)?;
    let re = right_extend(rho, spec)?;
    let phi = Phi::of(&re)?;
    let top = phi.interval(k, re.image(k));
    let mut rows: Vec<IntervalVector> = (1..=j - 2).map(|i| phi.j(i)).collect();
    rows.push(phi.span(j - 1, k - 1));
    rows.extend((0..k - j).map(|i| phi.pow(&top, i)));
    rows.extend((k..=phi.dim).map(|i| {
        let src = if tail == Thm10Tail::IndexI { i } else { j };
        phi.pow(&phi.j(src), k - j)
    }));
    let h = stack(rows)?;
    let p = params(&[("j", json!(j)), ("k", json!(k)), ("s", json!(s)), ("spec", json!(spec_json(spec)))]);
    ConjugacyWitness::new("interval-shift", p, se, re, Relation::SigmaSide, h)
}

fn spec_json(spec: &RightExtensionSpec) -> Value {
    json!({"kind": "right", "filler": spec.filler().images(), "slot": spec.slot()})
}

fn extend_opt(p: &Permutation, spec: Option<&RightExtensionSpec>) -> Result<Permutation> {
    spec.map_or_else(|| Ok(p.clone()), |s| right_extend(p, s))
}

/// Witness for `(α_{k+n}, θ_{k+n})`; with no spec, the base pair (only `k = 5`).
pub fn build_thm12(k: usize, spec: Option<&RightExtensionSpec>) -> Result<ConjugacyWitness> {
    let (a, t) = family_thm12(k)?;
    if spec.is_none() && k > 5 {
        return Err(precondition("the base matrices are similar only for k = 5"));
    }
    let (ae, te) = (extend_opt(&a, spec)?, extend_opt(&t, spec)?);
    let phi = Phi::of(&te)?;
    let top = phi.interval(k, te.image(k));
    let mut rows = vec![phi.span(1, 2), phi.span(1, 3), phi.j(3).sub(&phi.j(2))?, phi.span(2, k - 1)];
    rows.extend((0..k - 5).map(|i| phi.pow(&top, i)));
    rows.extend((k..=phi.dim).map(|i| phi.pow(&phi.j(i), k - 5)));
    let h = stack(rows)?;
    let p = params(&[("k", json!(k)), ("spec", spec.map_or(Value::Null, spec_json))]);
    ConjugacyWitness::new("alpha-theta", p, ae, te, Relation::SigmaSide, h)
}

/// Witness for `(β_{k+n}, δ_{k+n})`, `n >= 1`.
pub fn build_thm13(k: usize, spec: &RightExtensionSpec) -> Result<ConjugacyWitness> {
    let (b, d) = family_thm13(k)?;
    let (be, de) = (right_extend(&b, spec)?, right_extend(&d, spec)?);
    let phi = Phi::of(&de)?;
    let top = phi.interval(k, de.image(k));
    let mut rows = vec![phi.j(1), phi.span(1, 3), phi.span(4, k - 1)];
    rows.extend((0..k - 4).map(|i| phi.pow(&top, i)));
    rows.extend((k..=phi.dim).map(|i| phi.pow(&phi.j(i), k - 4)));
    let h = stack(rows)?;
    let p = params(&[("k", json!(k)), ("spec", spec_json(spec))]);
    ConjugacyWitness::new("beta-delta", p, be, de, Relation::SigmaSide, h)
}

/// Witness for a synchronized two-sided extension of `(134), (142)` on `P_4`,
/// from the basis `{J_1..J_m, J_{m+1}+J_{m+2}, J_{m+3}, [m+4, ρ(m+4)], φ_ρ(J_{m+4})..φ_ρ(J_{m+n+3})}`.
pub fn build_two_sided_134_142(spec: &TwoSidedExtensionSpec) -> Result<ConjugacyWitness> {
    let sigma = Permutation::from_cycle(&[1, 3, 4], 4)?;
    let rho = Permutation::from_cycle(&[1, 4, 2], 4)?;
    let (se, re) = (two_sided_extend(&sigma, spec)?, two_sided_extend(&rho, spec)?);
    let m = spec.left().size();
    let n = spec.right().size();
    let phi = Phi::of(&re)?;
    let mut rows: Vec<IntervalVector> = (1..=m).map(|i| phi.j(i)).collect();
    rows.push(phi.span(m + 1, m + 2));
    rows.push(phi.j(m + 3));
    rows.push(phi.interval(m + 4, re.image(m + 4)));
    rows.extend((m + 4..=m + n + 3).map(|i| phi.pow(&phi.j(i), 1)));
    let h = stack(rows)?.inverse()?;
    let spec_value = serde_json::to_value(crate::extensions::ExtensionSpec::TwoSided(spec.clone())).expect("serializable");
    let p = params(&[("m", json!(m)), ("n", json!(n)), ("spec", spec_value)]);
    ConjugacyWitness::new("two-sided-134-142", p, se, re, Relation::RhoSide, h)
}

// ---------------------------------------------------------------------------
// lifting a base witness through block extensions

/// Fillers glued below (`left`, on `1..m`) and above (`right`, on
/// `m+k+1..m+k+n`) an unchanged middle copy of the base.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockExtension {
    pub left: Option<Permutation>,
    pub right: Option<Permutation>,
}

impl BlockExtension {
    pub fn apply(&self, base: &Permutation) -> Result<Permutation> {
        let m = self.left.as_ref().map_or(0, |a| a.degree());
        let k = base.degree();
        let mut images: Vec<usize> = self.left.iter().flat_map(|a| a.images().iter().copied()).collect();
        images.extend(base.images().iter().map(|&v| m + v));
        if let Some(b) = &self.right {
            images.extend(b.images().iter().map(|&v| m + k + v));
        }
        Permutation::new(images)
    }
}

/// Extends a base witness `G` (with `M_σ·G = G·M_ρ`) to the block extensions
/// of `σ` and `ρ`, solving for the coupling rows at `J_m` and `J_{m+k}`.
/// Fails with [`Error::EigenvalueOne`] when `M_ρ - I` is singular.
pub fn lift_thm5(sigma: &Permutation, rho: &Permutation, g: &RatMatrix, ext: &BlockExtension) -> Result<ConjugacyWitness> {
    let k = sigma.degree();
    if k < 3 {
        return Err(Error::DegreeTooSmall { min: 3, got: k });
    }
    if ext.left.is_none() && ext.right.is_none() {
        return Err(precondition("at least one side must be extended"));
    }
    let ms = petrie_matrix(sigma)?;
    let mr = petrie_matrix(rho)?;
    if !verify_conjugacy(g, &mr, &ms)? {
        return Err(Error::Unverified("base witness does not satisfy M_σ·G = G·M_ρ".into()));
    }
    let shifted = mr.shift(1);
    if shifted.det().is_zero() {
        return Err(Error::EigenvalueOne);
    }
    let d = k - 1;
    let unit = |lo: usize, hi: usize| -> Vec<BigRational> {
        (1..=d).map(|i| if lo <= i && i < hi { BigRational::one() } else { BigRational::zero() }).collect()
    };
    let coupling = |lo_s: usize, hi_s: usize, lo_r: usize, hi_r: usize| -> Result<Vec<BigRational>> {
        let gs = g.left_apply(&unit(lo_s, hi_s))?;
        let rhs: Vec<BigRational> = gs.iter().zip(unit(lo_r, hi_r)).map(|(a, b)| a - b).collect();
        solve_rational(&shifted, &rhs).map_err(|_| Error::EigenvalueOne)
    };

    let m = ext.left.as_ref().map_or(0, |a| a.degree());
    let n = ext.right.as_ref().map_or(0, |b| b.degree());
    let dim = m + k + n - 1;
    let mut h = RatMatrix::zeros(dim, dim);
    for i in 0..dim {
        h.set(i, i, BigRational::one());
    }
    for r in 0..d {
        for c in 0..d {
            h.set(m + r, m + c, g.get(r, c).clone());
        }
    }
    if m > 0 {
        let u = coupling(1, sigma.image(1), 1, rho.image(1))?;
        for (c, v) in u.into_iter().enumerate() {
            h.set(m - 1, m + c, v);
        }
    }
    if n > 0 {
        let w = coupling(sigma.image(k), k, rho.image(k), k)?;
        for (c, v) in w.into_iter().enumerate() {
            h.set(m + k - 1, m + c, v);
        }
    }
    let p = params(&[("m", json!(m)), ("n", json!(n)), ("base_sigma", json!(sigma.images())), ("base_rho", json!(rho.images()))]);
    ConjugacyWitness::new("block-lift", p, ext.apply(sigma)?, ext.apply(rho)?, Relation::SigmaSide, h)
}

// ---------------------------------------------------------------------------
// registry

/// A certificate attached to a verdict.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    /// Extensions within the bound whose witness was built and verified.
    pub extensions_verified: usize,
}

#[derive(Clone, Copy, Debug)]
enum Recipe {
    AlphaTheta,
    BetaDelta,
    IntervalShift(usize),
    BasicLift,
}

impl Recipe {
    fn name(self) -> &'static str {
        match self {
            Self::AlphaTheta => "alpha-theta",
            Self::BetaDelta => "beta-delta",
            Self::IntervalShift(_) => "interval-shift",
            Self::BasicLift => "basic-lift",
        }
    }

    fn build(self, sigma: &Permutation, rho: &Permutation, spec: &RightExtensionSpec) -> Result<ConjugacyWitness> {
        let k = sigma.degree();
        match self {
            Self::AlphaTheta => build_thm12(k, Some(spec)),
            Self::BetaDelta => build_thm13(k, spec),
            Self::IntervalShift(j) => build_thm10(sigma, rho, j, spec),
            Self::BasicLift => thm7_witness(&right_extend(sigma, spec)?, &right_extend(rho, spec)?),
        }
    }
}

/// Tries the known constructive recipes for `(σ, ρ)` in `mode`. A recipe
/// certifies when it recognises the pair and every synchronized extension
/// within the bound gets a verified witness.
pub fn certify(sigma: &Permutation, rho: &Permutation, mode: Mode, bound: &ExtensionBound) -> Result<Option<Certificate>> {
    for (a, b) in [(sigma, rho), (rho, sigma)] {
        let found = match mode {
            Mode::Right => certify_right(a, b, bound.right)?,
            Mode::TwoSided => certify_two_sided(a, b, bound)?,
            Mode::Left => None,
        };
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn certify_right(sigma: &Permutation, rho: &Permutation, bound: usize) -> Result<Option<Certificate>> {
    let k = sigma.degree();
    let pair = (sigma.clone(), rho.clone());
    let mut recipes = Vec::new();
    if k >= 5 && family_thm12(k)? == pair {
        recipes.push(Recipe::AlphaTheta);
    }
    if k >= 5 && family_thm13(k)? == pair {
        recipes.push(Recipe::BetaDelta);
    }
    if let Some(j) = detect_thm10(sigma, rho) {
        recipes.push(Recipe::IntervalShift(j));
    }
    recipes.push(Recipe::BasicLift);
    'recipes: for recipe in recipes {
        let mut count = 0;
        for size in 1..=bound {
            for spec in right_specs(k, size) {
                if recipe.build(sigma, rho, &spec).is_err() {
                    continue 'recipes;
                }
                count += 1;
            }
        }
        let mut p = params(&[("k", json!(k))]);
        if let Recipe::IntervalShift(j) = recipe {
            p.insert("j".into(), json!(j));
        }
        return Ok(Some(Certificate { name: recipe.name().into(), params: p, extensions_verified: count }));
    }
    Ok(None)
}

fn certify_two_sided(sigma: &Permutation, rho: &Permutation, bound: &ExtensionBound) -> Result<Option<Certificate>> {
    if sigma.degree() != 4 || (sigma.clone(), rho.clone()) != (Permutation::from_cycle(&[1, 3, 4], 4)?, Permutation::from_cycle(&[1, 4, 2], 4)?) {
        return Ok(None);
    }
    let mut count = 0;
    for m in 1..=bound.left {
        for n in 1..=bound.right {
            for spec in two_sided_specs(4, m, n) {
                if build_two_sided_134_142(&spec).is_err() {
                    return Ok(None);
                }
                count += 1;
            }
        }
    }
    Ok(Some(Certificate { name: "two-sided-134-142".into(), params: BTreeMap::new(), extensions_verified: count }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    fn p(s: &str) -> Permutation {
        parse_permutation(s).unwrap()
    }

    #[test]
    fn identity_witness() {
        let a = petrie_matrix(&p("(1 6 5 7 2 3 4)")).unwrap();
        let b = petrie_matrix(&p("(1 2)(3 4)@7")).unwrap();
        let id = RatMatrix::identity(6);
        assert!(verify_conjugacy(&id, &a, &a).unwrap());
        assert!(!verify_conjugacy(&id, &a, &b).unwrap());
        assert!(verify_conjugacy(&RatMatrix::zeros(6, 6), &a, &a).is_ok_and(|v| !v));
        assert!(verify_conjugacy(&RatMatrix::identity(5), &a, &a).is_err());
    }

    #[test]
    fn basic_lift_small() {
        let (s, r, w) = build_thm7(1, 0, 1, None, &[1], &[]).unwrap();
        assert_eq!(s.images(), &[3, 1, 4, 5, 2]);
        assert_eq!(r.images(), &[4, 1, 2, 5, 3]);
        assert!(w.verified && w.check().unwrap());
        // h(J_{m+1} + J_{m+2}) = J_{m+1}
        let row = w.h.row(1).iter().zip(w.h.row(2)).map(|(a, b)| a + b).collect::<Vec<_>>();
        assert_eq!(row, vec![BigRational::zero(), BigRational::one(), BigRational::zero(), BigRational::zero()]);
        assert!(w.det().abs().is_one());
    }

    #[test]
    fn basic_lift_rejects_bad_parameters() {
        assert!(build_thm7(1, 1, 1, None, &[1], &[6]).is_err());
        assert!(build_thm7(1, 1, 1, Some(5), &[1], &[6]).is_err());
        assert!(build_thm7(2, 0, 3, None, &[1, 2], &[]).is_err());
        assert!(build_thm7(2, 0, 1, None, &[1, 1], &[]).is_err());
    }

    #[test]
    fn sigma_nk_consecutive() {
        for k in 5..=7 {
            let w = sigma_nk_chain(k, 3, k - 1).unwrap();
            assert_eq!(w.sigma, crate::families::family_sigma_nk(3, k).unwrap());
            assert_eq!(w.rho, crate::families::family_sigma_nk(k - 1, k).unwrap());
        }
    }

    #[test]
    fn iterate_basis() {
        for (mu, k) in [(vec![3, 1, 4, 5, 6, 2], 3), (vec![4, 1, 2, 5, 6, 7, 3], 4), (vec![3, 1, 6, 2, 4, 5], 3)] {
            let b = build_lemma9_basis(&Permutation::new(mu).unwrap(), k).unwrap();
            assert_eq!(b.dim(), k + 2);
            assert!(b.det().abs().is_one());
        }
        assert!(build_lemma9_basis(&p("(12)@6"), 3).is_err());
    }

    #[test]
    fn interval_shift_tail_reading() {
        let (s, _, m, _) = crate::families::family_cor11(&p("1 -> 3 -> 2 -> 5 -> 4 -> 1"), 7).unwrap();
        let spec = right_specs(7, 2).nth(1).unwrap();
        assert!(build_thm10_variant(&s, &m, 5, &spec, Thm10Tail::IndexI).is_ok());
        assert!(build_thm10_variant(&s, &m, 5, &spec, Thm10Tail::IndexJ).is_err());
    }

    #[test]
    fn interval_shift_rejects_inputs_failing_clause_e() {
        let k = 6;
        let s = p("1 -> 3 -> 2 -> 4 -> 5 -> 6 -> 1");
        let r = p("1 -> 3 -> 2 -> 6 -> 5 -> 4 -> 1");
        let spec = right_specs(k, 1).next().unwrap();
        let err = build_thm10(&s, &r, 4, &spec).unwrap_err().to_string();
        assert!(err.contains("clause (e)"), "{err}");
    }

    #[test]
    fn alpha_theta_and_beta_delta_witnesses() {
        assert!(build_thm12(5, None).unwrap().verified);
        assert!(build_thm12(6, None).is_err());
        for spec in right_specs(6, 1) {
            assert!(build_thm12(6, Some(&spec)).unwrap().verified);
        }
        for spec in right_specs(5, 1) {
            assert!(build_thm13(5, &spec).unwrap().verified);
        }
    }

    #[test]
    fn remark_pair_has_eigenvalue_one() {
        let s = p("(1 3)@4");
        let r = p("(1 3)(2 4)");
        let g = RatMatrix::from_rows(
            [[1, 0, 0], [0, 0, 1], [1, 1, 1]].iter().map(|row| row.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect(),
        )
        .unwrap();
        assert!(verify_conjugacy(&g, &petrie_matrix(&r).unwrap(), &petrie_matrix(&s).unwrap()).unwrap());
        let ext = BlockExtension { left: None, right: Some(p("(1 2)")) };
        assert!(matches!(lift_thm5(&s, &r, &g, &ext), Err(Error::EigenvalueOne)));
    }

    #[test]
    fn lift_with_identity_base() {
        let s = p("(1 2 3)");
        let g = RatMatrix::identity(2);
        for ext in [
            BlockExtension { left: None, right: Some(p("(1 2)")) },
            BlockExtension { left: Some(p("(1 2)")), right: None },
            BlockExtension { left: Some(p("1 2")), right: Some(p("(1 3 2)")) },
        ] {
            let w = lift_thm5(&s, &s, &g, &ext).unwrap();
            assert!(w.verified);
        }
    }

    #[test]
    fn lift_alpha_theta_base() {
        let base = build_thm12(5, None).unwrap();
        let ext = BlockExtension { left: Some(p("(1 2)")), right: Some(p("(1 2 3)")) };
        let w = lift_thm5(&base.sigma, &base.rho, &base.h, &ext).unwrap();
        assert!(w.check().unwrap());
    }

    #[test]
    fn two_sided_134_142() {
        for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for spec in two_sided_specs(4, m, n) {
                assert!(build_two_sided_134_142(&spec).is_ok(), "{m} {n}");
            }
        }
    }

    #[test]
    fn witness_json_round_trip() {
        let w = build_thm12(5, None).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert!(s.contains("\"schema_version\""));
        let back: ConjugacyWitness = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert!(back.check().unwrap());
    }
}

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use num_traits::ToPrimitive;
use petrie_core::algebra::{conjugator, invariant_factors, minpoly, similar, IntMatrix, RatMatrix};
use petrie_core::certificates::{
    build_lemma9_basis, build_thm10, build_thm12, build_thm13, build_thm7, detect_thm10, lift_thm5, BlockExtension,
    ConjugacyWitness,
};
use petrie_core::extensions::{right_specs, ExtensionSpec, RightExtensionSpec};
use petrie_core::families::family_thm12;
use petrie_core::perm::{parse_permutation, Permutation, PointMap};
use petrie_core::petrie::{export_digraph, petrie_matrix};
use petrie_core::report::{self, load_cached, store, SCHEMA_VERSION};
use petrie_core::sim::{check_pair, classify, ClassificationReport, Mode, Outcome, Strength, Verdict};
use petrie_core::Error;
use serde_json::{json, Value};

use crate::cli::{BoundArg, GlobalArgs, OutputFormat, VerifyArgs};

/// What the process should exit with when no error occurred.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Negative,
}

fn perm(text: &str) -> Result<Permutation> {
    parse_permutation(text).with_context(|| format!("reading permutation {text:?}"))
}

fn emit(g: &GlobalArgs, value: &Value, text: impl FnOnce() -> String) {
    match g.output {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(value).expect("json")),
        OutputFormat::Text => print!("{}", text()),
    }
}

fn int_json(m: &IntMatrix) -> Value {
    m.rows()
        .iter()
        .map(|r| r.iter().map(|v| v.to_i64().map_or_else(|| json!(v.to_string()), |x| json!(x))).collect::<Vec<_>>())
        .collect()
}

fn strength(g: &GlobalArgs) -> Strength {
    if g.weak {
        Strength::WeaklySimilar
    } else {
        Strength::Similar
    }
}

pub fn matrix(g: &GlobalArgs, text: &str, with_minpoly: bool, with_factors: bool) -> Result<Status> {
    let p = perm(text)?;
    let m = petrie_matrix(&p)?;
    let charpoly = m.charpoly();
    let mp = with_minpoly.then(|| minpoly(&m));
    let factors = with_factors.then(|| invariant_factors(&m));
    let mut value = json!({
        "schema_version": SCHEMA_VERSION,
        "permutation": p.images(),
        "cycles": p.cycle_string(false),
        "dimension": m.dim(),
        "matrix": int_json(&m),
        "det": m.det().to_string(),
        "trace": m.trace().to_string(),
        "charpoly": charpoly.to_string(),
        "charpoly_coefficients": charpoly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    if let Some(mp) = &mp {
        value["minpoly"] = json!(mp.to_string());
    }
    if let Some(f) = &factors {
        value["invariant_factors"] = json!(f.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    }
    emit(g, &value, || {
        let mut s = format!("permutation {p}  {}\nM ({}x{}):\n", p.cycle_string(false), m.dim(), m.dim());
        for line in m.to_string().lines() {
            let _ = writeln!(s, "  {line}");
        }
        let _ = writeln!(s, "det       {}", m.det());
        let _ = writeln!(s, "trace     {}", m.trace());
        let _ = writeln!(s, "charpoly  {charpoly}");
        if let Some(mp) = &mp {
            let _ = writeln!(s, "minpoly   {mp}");
        }
        if let Some(f) = &factors {
            let list: Vec<String> = f.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(s, "invariant factors  [{}]", list.join(", "));
        }
        s
    });
    Ok(Status::Ok)
}

fn render_verdict(v: &Verdict) -> String {
    let mut s = format!(
        "{} vs {} on P_{}: {} {}\n",
        v.sigma.cycle_string(false),
        v.rho.cycle_string(false),
        v.sigma.degree(),
        v.mode,
        match v.strength {
            Strength::Similar => "similarity",
            Strength::WeaklySimilar => "weak similarity",
        }
    );
    match &v.outcome {
        Outcome::Refuted { witness } => {
            let _ = writeln!(s, "REFUTED");
            let _ = writeln!(s, "  extension  {}", witness.spec);
            let _ = writeln!(s, "  extended   {}  vs  {}", witness.sigma, witness.rho);
            let _ = writeln!(s, "  {}  {}  vs  {}", witness.discriminator, witness.values[0], witness.values[1]);
            let _ = writeln!(s, "  replay     petrie extend '{}' --spec '{}'", v.sigma, witness.spec);
            let _ = writeln!(s, "             petrie extend '{}' --spec '{}'", v.rho, witness.spec);
            let _ = writeln!(s, "             petrie matrix '{}'; petrie matrix '{}'", witness.sigma, witness.rho);
        }
        Outcome::ConsistentUpTo { bound } => {
            let _ = writeln!(s, "CONSISTENT up to bound {bound} (no separating extension found; not a proof)");
        }
        Outcome::Certified { bound, certificate } => {
            let _ = writeln!(
                s,
                "CERTIFIED within bound {bound} by {} ({} extensions with verified witnesses)",
                certificate.name, certificate.extensions_verified
            );
        }
    }
    for l in &v.log {
        let _ = writeln!(s, "  size {}x{}: {} pairs compared", l.left, l.right, l.checked);
    }
    let _ = writeln!(s, "base Petrie matrices similar: {}", v.petrie_similar);
    s
}

pub fn simtest(g: &GlobalArgs, a: &str, b: &str, mode: Mode) -> Result<Status> {
    let (a, b) = (perm(a)?, perm(b)?);
    let bound = BoundArg::resolve(g.bound, mode);
    let v = check_pair(&a, &b, mode, strength(g), &bound)?;
    emit(g, &serde_json::to_value(&v)?, || render_verdict(&v));
    Ok(if v.is_refuted() { Status::Negative } else { Status::Ok })
}

pub fn classify_cmd(g: &GlobalArgs, n: usize, mode: Mode) -> Result<Status> {
    if n < 3 {
        bail!("classification needs n >= 3, got {n}");
    }
    let bound = BoundArg::resolve(g.bound, mode);
    let st = strength(g);
    let path = report::cache_dir(g.cache_dir.as_deref()).join(ClassificationReport::cache_file_name(n, mode, st, &bound));
    let cached = if g.fresh { None } else { load_cached::<ClassificationReport>(&path) };
    let from_cache = cached.is_some();
    let r = match cached {
        Some(r) => r,
        None => {
            let r = classify(n, mode, st, &bound)?;
            store(&path, &r)?;
            r
        }
    };
    emit(g, &serde_json::to_value(&r)?, || {
        let mut s = format!(
            "S_{n}, {mode} {}, bound {bound}: {} classes, {} nontrivial\n",
            if st == Strength::Similar { "similarity" } else { "weak similarity" },
            r.classes.len(),
            r.nontrivial().count()
        );
        for c in r.nontrivial() {
            let names: Vec<String> = c.members.iter().map(|p| p.cycle_string(true)).collect();
            let _ = writeln!(s, "  {{{}}}  {:?}", names.join(", "), c.status);
        }
        let _ = writeln!(s, "report {} ({})", path.display(), if from_cache { "cached" } else { "computed" });
        s
    });
    Ok(Status::Ok)
}

pub fn extend(g: &GlobalArgs, base: &str, spec: &str) -> Result<Status> {
    let base = perm(base)?;
    let spec: ExtensionSpec = serde_json::from_str(spec).with_context(|| format!("reading extension spec {spec:?}"))?;
    let out = spec.apply(&base)?;
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "base": base.images(),
        "spec": spec,
        "extended": out.images(),
        "cycles": out.cycle_string(false),
    });
    emit(g, &value, || format!("{out}  {}\n", out.cycle_string(false)));
    Ok(Status::Ok)
}

pub fn dual(g: &GlobalArgs, text: &str) -> Result<Status> {
    let d = perm(text)?.dual();
    let value = json!({"schema_version": SCHEMA_VERSION, "dual": d.images(), "cycles": d.cycle_string(false)});
    emit(g, &value, || format!("{d}  {}\n", d.cycle_string(false)));
    Ok(Status::Ok)
}

pub fn graph(g: &GlobalArgs, text: &str) -> Result<Status> {
    let dot = export_digraph(&perm(text)?)?;
    emit(g, &json!({"schema_version": SCHEMA_VERSION, "dot": dot}), || dot.clone());
    Ok(Status::Ok)
}

// ---------------------------------------------------------------------------
// verify

fn need<T: Copy>(v: Option<T>, name: &str, theorem: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("construction {theorem} needs --{name}"))
}

fn images(text: &str) -> Result<Vec<usize>> {
    text.split([' ', ','])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("bad image {t:?}")))
        .collect()
}

fn right_spec(text: &str) -> Result<RightExtensionSpec> {
    match serde_json::from_str::<ExtensionSpec>(text).with_context(|| format!("reading spec {text:?}"))? {
        ExtensionSpec::Right(s) => Ok(s),
        _ => bail!("construction needs a right extension spec"),
    }
}

/// Specs selected by `--spec` or, failing that, every right spec of size `--n`.
fn selected_specs(a: &VerifyArgs, k: usize) -> Result<Vec<RightExtensionSpec>> {
    match (&a.spec, a.n) {
        (Some(s), _) => Ok(vec![right_spec(s)?.rebased(k)]),
        (None, Some(n)) if n >= 1 => Ok(right_specs(k, n).collect()),
        _ => bail!("pass --spec or --n >= 1"),
    }
}

/// Recoverable outcome of a construction: FAIL lines, not errors.
fn failing(e: &Error) -> bool {
    matches!(e, Error::Unverified(_) | Error::EigenvalueOne | Error::Singular)
}

struct Report {
    name: String,
    witnesses: Vec<ConjugacyWitness>,
    extra: Vec<(String, Value)>,
    failure: Option<String>,
}

impl Report {
    fn new(name: &str) -> Self {
        Self { name: name.into(), witnesses: Vec::new(), extra: Vec::new(), failure: None }
    }

    fn take(&mut self, r: petrie_core::Result<ConjugacyWitness>) -> Result<()> {
        match r {
            Ok(w) if w.check()? => self.witnesses.push(w),
            Ok(w) => self.failure = Some(format!("{} witness does not verify", w.theorem)),
            Err(e) if failing(&e) => self.failure = Some(e.to_string()),
            Err(e) => return Err(e.into()),
        }
        Ok(())
    }
}

fn rat_matrix(text: &str) -> Result<RatMatrix> {
    let rows: Vec<Vec<Value>> = serde_json::from_str(text).context("--g must be JSON rows")?;
    let rows = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| {
                    let s = match v {
                        Value::String(s) => s,
                        other => other.to_string(),
                    };
                    petrie_core::algebra::parse_rational(&s).map_err(|e| anyhow!(e))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RatMatrix::from_rows(rows)?)
}

pub fn verify(g: &GlobalArgs, a: &VerifyArgs) -> Result<Status> {
    let th = a.theorem.as_str();
    let mut rep = match th {
        "5" => Report::new("block-lift"),
        "7" => Report::new("basic-lift"),
        "9" => Report::new("iterate-basis"),
        "10" => Report::new("interval-shift"),
        "12" => Report::new("alpha-theta"),
        _ => Report::new("beta-delta"),
    };
    match th {
        "5" => {
            let sigma = perm(a.sigma.as_deref().ok_or_else(|| anyhow!("construction 5 needs --sigma"))?)?;
            let rho = perm(a.rho.as_deref().ok_or_else(|| anyhow!("construction 5 needs --rho"))?)?;
            let left = a.left.as_deref().map(perm).transpose()?;
            let right = a.right.as_deref().map(perm).transpose()?;
            let ext = match (left, right) {
                (None, None) => BlockExtension { left: None, right: Some(Permutation::identity(1)) },
                (left, right) => BlockExtension { left, right },
            };
            let (ms, mr) = (petrie_matrix(&sigma)?, petrie_matrix(&rho)?);
            let base = match &a.g {
                Some(text) => Some(rat_matrix(text)?),
                // rows g(J_i): M_σ·G = G·M_ρ
                None => conjugator(&mr, &ms)?,
            };
            match base {
                None => rep.failure = Some("base Petrie matrices are not similar".into()),
                Some(gm) => {
                    rep.extra.push(("G".into(), serde_json::to_value(&gm)?));
                    rep.take(lift_thm5(&sigma, &rho, &gm, &ext))?;
                }
            }
        }
        "7" => {
            let (m, n, s) = (need(a.m, "m", th)?, need(a.n, "n", th)?, need(a.s, "s", th)?);
            let low = a.low.as_deref().map(images).transpose()?.unwrap_or_else(|| (1..=m).collect());
            let high = a.high.as_deref().map(images).transpose()?.unwrap_or_else(|| (m + 5..=m + n + 4).collect());
            let built = build_thm7(m, n, s, a.t, &low, &high);
            rep.take(built.map(|(_, _, w)| w))?;
        }
        "9" => {
            let mu = perm(a.mu.as_deref().ok_or_else(|| anyhow!("construction 9 needs --mu"))?)?;
            let k = need(a.k, "k", th)?;
            match build_lemma9_basis(&mu, k) {
                Ok(b) => {
                    rep.extra.push(("basis".into(), serde_json::to_value(b.as_rat_matrix())?));
                    rep.extra.push(("det".into(), json!(b.det().to_string())));
                }
                Err(e) if failing(&e) => rep.failure = Some(e.to_string()),
                Err(e) => return Err(e.into()),
            }
        }
        "10" => {
            let sigma = perm(a.sigma.as_deref().ok_or_else(|| anyhow!("construction 10 needs --sigma"))?)?;
            let rho = perm(a.rho.as_deref().ok_or_else(|| anyhow!("construction 10 needs --rho"))?)?;
            let j = match a.j {
                Some(j) => j,
                None => detect_thm10(&sigma, &rho).ok_or_else(|| anyhow!("pair does not have the interval-shift shape; pass --j for a diagnostic"))?,
            };
            for spec in selected_specs(a, sigma.degree())? {
                rep.take(build_thm10(&sigma, &rho, j, &spec))?;
            }
        }
        "12" => {
            let k = need(a.k, "k", th)?;
            if a.spec.is_none() && a.n == Some(0) {
                rep.take(build_thm12(k, None))?;
            } else {
                for spec in selected_specs(a, k)? {
                    rep.take(build_thm12(k, Some(&spec)))?;
                }
            }
            if a.assert_base_similar {
                let (al, th) = family_thm12(k)?;
                let ok = similar(&petrie_matrix(&al)?, &petrie_matrix(&th)?)?;
                rep.extra.push(("base_similar".into(), json!(ok)));
                if !ok && rep.failure.is_none() {
                    rep.failure = Some(format!("base Petrie matrices of the k = {k} pair are not similar"));
                }
            }
        }
        _ => {
            let k = need(a.k, "k", th)?;
            for spec in selected_specs(a, k)? {
                rep.take(build_thm13(k, &spec))?;
            }
        }
    }

    let pass = rep.failure.is_none();
    let mut value = json!({
        "schema_version": SCHEMA_VERSION,
        "construction": rep.name,
        "status": if pass { "PASS" } else { "FAIL" },
        "witnesses": rep.witnesses,
    });
    if let Some(f) = &rep.failure {
        value["diagnostic"] = json!(f);
    }
    for (key, v) in &rep.extra {
        value[key] = v.clone();
    }
    emit(g, &value, || {
        let mut s = String::new();
        match &rep.failure {
            None if rep.witnesses.is_empty() => {
                let _ = writeln!(s, "PASS {}: basis verified", rep.name);
            }
            None => {
                let _ = writeln!(s, "PASS {}: {} witness(es) verified", rep.name, rep.witnesses.len());
            }
            Some(f) => {
                let _ = writeln!(s, "FAIL {}: {f}", rep.name);
            }
        }
        if let [w] = rep.witnesses.as_slice() {
            let _ = writeln!(s, "  sigma {}  {}", w.sigma, w.sigma.cycle_string(false));
            let _ = writeln!(s, "  rho   {}  {}", w.rho, w.rho.cycle_string(false));
            let _ = writeln!(s, "  relation {:?}, det H = {}", w.relation, w.det());
            for line in w.h.to_string().lines() {
                let _ = writeln!(s, "  {line}");
            }
        }
        for (key, v) in &rep.extra {
            let _ = writeln!(s, "  {key}: {v}");
        }
        s
    });
    Ok(if pass { Status::Ok } else { Status::Negative })
}

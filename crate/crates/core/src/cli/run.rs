use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Map, Value};

use crate::crystalline::{hc_layers_small, hodge_hh, l_complex, lprime_complex, Envelope};
use crate::error::{Error, Result};
use crate::gamma::{
    auto_truncation, hc_assemble, hc_totals, hh_assemble, hh_layers, witness_nondegeneracy, GammaFormsComplex,
    Truncation,
};
use crate::linalg::{smith_form, HomologyGroup, IntMatrix};
use crate::mixed::FilteredGroups;
use crate::model::koszul_model;
use crate::oracle::{cyclic_mixed, hc_oracle, hh_oracle, FiniteAlgebra};

use super::job::{Command, JobSpec};

/// Result of running a job: the JSON document and whether every requested
/// check passed.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub ok: bool,
}

/// JSON for an error, naming the failing variant.
pub fn error_json(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
}

fn group_json(n: usize, g: &HomologyGroup) -> Value {
    let mut v = serde_json::to_value(g).expect("groups serialize");
    v.as_object_mut().expect("object").insert("n".into(), json!(n));
    v
}

fn degrees_json(groups: &[HomologyGroup]) -> Value {
    Value::Array(groups.iter().enumerate().map(|(n, g)| group_json(n, g)).collect())
}

fn layered_json(f: &FilteredGroups) -> Value {
    Value::Array(
        f.total
            .iter()
            .enumerate()
            .map(|(n, g)| {
                let mut v = group_json(n, g);
                let layers: Vec<Value> = f.layers[n]
                    .iter()
                    .enumerate()
                    .map(|(p, l)| {
                        let mut lv = serde_json::to_value(l).expect("groups serialize");
                        lv.as_object_mut().expect("object").insert("p".into(), json!(p));
                        lv
                    })
                    .collect();
                v.as_object_mut()
                    .expect("object")
                    .insert("layers".into(), Value::Array(layers));
                v
            })
            .collect(),
    )
}

fn max_weight(t: Truncation) -> Option<u32> {
    match t {
        Truncation::None => None,
        Truncation::Split(n) | Truncation::Cumulative(n) => Some(n),
    }
}

/// Whether the cut is known to leave degrees `≤ n_max` unchanged: always
/// for the automatic choice, and for an explicit bound only when it reaches
/// the automatic one.
fn truncation_exact(job: &JobSpec, t: Truncation) -> bool {
    match auto_truncation(&job.presentation, job.n_max) {
        Ok(auto) => max_weight(t) >= max_weight(auto),
        Err(_) => false,
    }
}

fn truncation_json(job: &JobSpec, t: Truncation) -> Value {
    let kind = match t {
        Truncation::None => "none",
        Truncation::Split(_) => "split",
        Truncation::Cumulative(_) => "cumulative",
    };
    json!({ "kind": kind, "max_weight": max_weight(t), "exact": truncation_exact(job, t) })
}

/// The Γ-forms complex of the job's Koszul model, with the explicit bound
/// when one is given.
pub fn gamma_complex(job: &JobSpec, n_max: usize) -> Result<GammaFormsComplex> {
    let p = &job.presentation;
    let truncation = match job.bound {
        Some(b) if p.nvars() > 0 => {
            if p.is_homogeneous() {
                Truncation::Split(b)
            } else {
                Truncation::Cumulative(b)
            }
        }
        _ => auto_truncation(p, n_max).map_err(|e| match e {
            Error::NotQuasiMonic(m) => Error::NotQuasiMonic(format!("{m}; give an explicit `bound`")),
            other => other,
        })?,
    };
    GammaFormsComplex::build(&koszul_model(p), n_max, truncation)
}

fn header(job: &JobSpec, cmd: Command) -> Map<String, Value> {
    let p = &job.presentation;
    let mut m = Map::new();
    m.insert("command".into(), json!(cmd.to_string()));
    m.insert("ring".into(), json!(p.ring.to_string()));
    m.insert("variables".into(), json!(p.variables));
    m.insert(
        "relations".into(),
        json!(p.relations.iter().map(|f| f.format(&p.variables)).collect::<Vec<_>>()),
    );
    m.insert("n_max".into(), json!(job.n_max));
    m.insert("warnings".into(), json!(job.warnings));
    m
}

/// Runs `cmd` (or the job's own command, default `hh`).
pub fn run(job: &JobSpec, cmd: Option<Command>, seed: u64) -> Result<Report> {
    let cmd = cmd.or(job.command).unwrap_or(Command::Hh);
    let mut out = header(job, cmd);
    let n_max = job.n_max;
    let ok = match cmd {
        Command::Hh => {
            let g = gamma_complex(job, n_max)?;
            out.insert("pipeline".into(), json!("gamma-forms"));
            out.insert("truncation".into(), truncation_json(job, g.truncation()));
            out.insert("degrees".into(), degrees_json(&hh_assemble(&g, n_max)?));
            true
        }
        Command::Hc => {
            let g = gamma_complex(job, n_max)?;
            out.insert("pipeline".into(), json!("gamma-forms"));
            out.insert("truncation".into(), truncation_json(job, g.truncation()));
            out.insert("degrees".into(), degrees_json(&hc_totals(&g, n_max)?));
            true
        }
        Command::Layers => {
            let g = gamma_complex(job, n_max)?;
            out.insert("pipeline".into(), json!("gamma-forms"));
            out.insert("truncation".into(), truncation_json(job, g.truncation()));
            out.insert("hh".into(), layered_json(&hh_layers(&g, n_max)?));
            out.insert("hc".into(), layered_json(&hc_assemble(&g, n_max)?));
            true
        }
        Command::Oracle => {
            let a = FiniteAlgebra::from_presentation(&job.presentation)?;
            out.insert("pipeline".into(), json!("bar-oracle"));
            out.insert("rank".into(), json!(a.rank()));
            out.insert("hh".into(), degrees_json(&hh_oracle(&a, n_max)?));
            out.insert("hc".into(), degrees_json(&hc_oracle(&a, n_max)?));
            true
        }
        Command::Compare => {
            let (table, ok) = compare(job)?;
            for (k, v) in table {
                out.insert(k, v);
            }
            ok
        }
        Command::Witness { p } => {
            let r = witness_nondegeneracy(&job.presentation.ring, p)?;
            let ok = r.certifies_nondegeneracy();
            let v = serde_json::to_value(&r).expect("report serializes");
            for (k, val) in v.as_object().expect("object") {
                out.insert(k.clone(), val.clone());
            }
            ok
        }
        Command::Selftest => {
            let (checks, ok) = selftest(job, seed)?;
            out.insert("seed".into(), json!(seed));
            out.insert("checks".into(), checks);
            out.insert("all_passed".into(), json!(ok));
            ok
        }
    };
    Ok(Report {
        json: Value::Object(out),
        ok,
    })
}

type Outcome = std::result::Result<Vec<HomologyGroup>, Error>;

fn compare_rows(names: &[&str], results: &[Outcome], n_max: usize) -> (Value, bool) {
    let mut rows = Vec::new();
    let mut all = true;
    for n in 0..=n_max {
        let mut row = Map::new();
        row.insert("n".into(), json!(n));
        let mut seen: Vec<&HomologyGroup> = Vec::new();
        for (name, r) in names.iter().zip(results) {
            if let Ok(groups) = r {
                row.insert((*name).into(), json!(groups[n].to_string()));
                seen.push(&groups[n]);
            }
        }
        let agree = seen.windows(2).all(|w| w[0] == w[1]);
        all &= agree;
        row.insert("agree".into(), json!(agree));
        rows.push(Value::Object(row));
    }
    (Value::Array(rows), all)
}

/// Runs every applicable pipeline and tabulates agreement per degree.
pub fn compare(job: &JobSpec) -> Result<(Map<String, Value>, bool)> {
    let n_max = job.n_max;
    let p = &job.presentation;
    let gamma = gamma_complex(job, n_max);
    let envelope = Envelope::new(p);
    let algebra = FiniteAlgebra::from_presentation(p);

    let hh: Vec<Outcome> = vec![
        gamma.as_ref().map_err(Clone::clone).and_then(|g| hh_assemble(g, n_max)),
        envelope
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|e| hodge_hh(e, n_max).map(|f| f.total)),
        algebra.as_ref().map_err(Clone::clone).and_then(|a| hh_oracle(a, n_max)),
    ];
    let hc: Vec<Outcome> = vec![
        gamma.as_ref().map_err(Clone::clone).and_then(|g| hc_totals(g, n_max)),
        envelope
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|e| hc_layers_small(e, n_max).map(|f| f.total)),
        algebra.as_ref().map_err(Clone::clone).and_then(|a| hc_oracle(a, n_max)),
    ];
    let names = ["gamma_forms", "crystalline", "oracle"];
    let mut skipped = Vec::new();
    for (what, list) in [("hh", &hh), ("hc", &hc)] {
        for (name, r) in names.iter().zip(list.iter()) {
            if let Err(e) = r {
                skipped.push(json!({ "table": what, "pipeline": name, "kind": e.kind(), "reason": e.to_string() }));
            }
        }
    }
    let ran = |list: &[Outcome]| list.iter().filter(|r| r.is_ok()).count();
    if ran(&hh) == 0 {
        return Err(hh.into_iter().find_map(Result::err).expect("every pipeline failed"));
    }
    let (hh_rows, hh_ok) = compare_rows(&names, &hh, n_max);
    let (hc_rows, hc_ok) = compare_rows(&names, &hc, n_max);
    let compared = ran(&hh) >= 2;
    let mut m = Map::new();
    m.insert("hh".into(), hh_rows);
    m.insert("hc".into(), hc_rows);
    m.insert("skipped".into(), Value::Array(skipped));
    m.insert("pipelines_compared".into(), json!(ran(&hh)));
    let ok = hh_ok && hc_ok && compared;
    m.insert("all_agree".into(), json!(ok));
    Ok((m, ok))
}

/// Structural checks on every complex the job builds, the pipeline
/// comparison and a seeded batch of random Smith forms.
pub fn selftest(job: &JobSpec, seed: u64) -> Result<(Value, bool)> {
    let n_max = job.n_max;
    let mut checks = Map::new();
    let g = gamma_complex(job, n_max)?;
    checks.insert(
        "gamma_forms_identities".into(),
        json!(g.pieces().iter().all(|p| p.validate().is_valid())),
    );
    if let Ok(a) = FiniteAlgebra::from_presentation(&job.presentation) {
        checks.insert(
            "oracle_identities".into(),
            json!(cyclic_mixed(&a, n_max)?.validate().is_valid()),
        );
    }
    if let Ok(e) = Envelope::new(&job.presentation) {
        let ok = (0..=n_max).all(|p| {
            l_complex(&e, p).and_then(|c| c.check()).is_ok() && lprime_complex(&e, p).and_then(|c| c.check()).is_ok()
        });
        checks.insert("crystalline_boundaries".into(), json!(ok));
    }
    let (_, agree) = compare(job)?;
    checks.insert("pipelines_agree".into(), json!(agree));
    let mut rng = StdRng::seed_from_u64(seed);
    let snf_ok = (0..50).all(|_| {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let data = (0..rows)
            .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect())
            .collect();
        let m = IntMatrix { rows, cols, data };
        smith_form(&m).verify(&m)
    });
    checks.insert("random_smith_forms".into(), json!(snf_ok));
    let ok = checks.values().all(|v| v.as_bool() == Some(true));
    Ok((Value::Object(checks), ok))
}

use qfold_core::corpus;
use qfold_core::dims::{fixed_components, ComponentRecord};
use qfold_core::field::format_q;
use qfold_core::lie_fold::{cartan_from_quiver, classify_cartan, fold_cartan, CartanMatrix};
use qfold_core::module_lab::json::{
    dims_to_json, matrix_to_json, module_from_json, module_to_json, vertex_matrices_from_json,
    vertex_matrices_to_json,
};
use qfold_core::module_lab::random::random_theta_pair;
use qfold_core::module_lab::{
    apply_theta, build_theta_witness, check_framed_embedding, check_relations, destabilizing_subspace,
    eigen_profile, find_transition, hecke_profile, is_stable, verify_eigenspace_embedding, twisted_operator, EigenProfile,
    FramedEmbedding, RelationMode,
};
use qfold_core::quiver::{orbit_data, QuiverJson};
use qfold_core::rep::{branch_capped, highest_weight_from_framing};
use qfold_core::split::{quotient_quiver, split_framing, split_quiver, SplitData};
use qfold_core::verify::{verify_all, Status, VerifyConfig};
use qfold_core::{DiagramAutomorphism, DoubledQuiver, FramedModule, Matrix, Quiver, Q};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::args::*;
use crate::input::{load_document, load_quiver, parse_dims, Document, InputResult};
use crate::table::render;
use crate::{Outcome, EXIT_OK, EXIT_VIOLATION};

pub fn dispatch(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Split(src) => split(cli, src),
        Command::Quotient(src) => quotient(cli, src),
        Command::Fold(src) => fold(cli, src),
        Command::Branch(args) => branch(cli, args),
        Command::Dims(args) => dims(cli, args),
        Command::Module(m) => module(cli, m),
        Command::VerifyAll(args) => verify(cli, args),
        Command::Corpus => list_corpus(cli),
    };
    result.unwrap_or_else(Outcome::input_error)
}

fn e2s(e: qfold_core::Error) -> String {
    e.to_string()
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn ids(q: &Quiver, v: &[u64]) -> String {
    v.iter()
        .enumerate()
        .map(|(x, k)| format!("{}={k}", q.vertex_id(x)))
        .collect::<Vec<_>>()
        .join(",")
}

fn quiver_text(title: &str, qj: &QuiverJson) -> String {
    let mut out = format!("{title}\n");
    let rows: Vec<Vec<String>> = qj
        .vertices
        .iter()
        .map(|id| {
            let mut r = vec![id.clone()];
            if let Some(a) = &qj.automorphism {
                r.push(a.vertices.get(id).and_then(Value::as_str).unwrap_or("").to_string());
            }
            if let Some(l) = qj.labels.as_ref().and_then(|l| l.get(id)) {
                r.push(l.get("orbit").and_then(Value::as_str).unwrap_or("").to_string());
                r.push(l.get("phase").and_then(Value::as_str).unwrap_or("").to_string());
            }
            r
        })
        .collect();
    let mut header = vec!["vertex"];
    if qj.automorphism.is_some() {
        header.push("image");
    }
    if qj.labels.is_some() {
        header.extend(["orbit", "phase"]);
    }
    out += &render(&header, &rows);
    out += "\n";
    let erows: Vec<Vec<String>> = qj
        .edges
        .iter()
        .map(|e| vec![e.id.clone(), e.src.clone(), e.tgt.clone()])
        .collect();
    out += &render(&["edge", "src", "tgt"], &erows);
    out
}

fn split(cli: &Cli, src: &Source) -> InputResult<Outcome> {
    let (name, q, a) = load_quiver(src)?;
    let sd = split_quiver(&q, &a).map_err(e2s)?;
    let qj = sd.to_json();
    if cli.json {
        return Ok(Outcome::ok(pretty(&serde_json::to_value(&qj).expect("serializable"))));
    }
    let ty = classify_cartan(&cartan_from_quiver(&sd.split).map_err(e2s)?);
    Ok(Outcome::ok(quiver_text(&format!("split quiver of {name}: type {ty}"), &qj)))
}

fn quotient(cli: &Cli, src: &Source) -> InputResult<Outcome> {
    let (name, q, a) = load_quiver(src)?;
    let quot = quotient_quiver(&q, &a).map_err(e2s)?;
    let od = orbit_data(&q, &a).map_err(e2s)?;
    let mut qj = QuiverJson::from_quiver(&quot, None);
    let labels: Map<String, Value> = od
        .vertex_orbits
        .iter()
        .enumerate()
        .map(|(k, orbit)| {
            let members: Vec<&str> = orbit.iter().map(|&x| q.vertex_id(x)).collect();
            (
                quot.vertex_id(k).to_string(),
                json!({"orbit": members, "size": orbit.len(), "e": od.orbit_e(k)}),
            )
        })
        .collect();
    qj.labels = Some(labels);
    if cli.json {
        return Ok(Outcome::ok(pretty(&serde_json::to_value(&qj).expect("serializable"))));
    }
    let rows: Vec<Vec<String>> = od
        .vertex_orbits
        .iter()
        .enumerate()
        .map(|(k, orbit)| vec![quot.vertex_id(k).to_string(), orbit.len().to_string(), od.orbit_e(k).to_string()])
        .collect();
    let mut out = format!("quotient of {name}\n");
    out += &render(&["vertex", "size", "e"], &rows);
    out += "\n";
    let erows: Vec<Vec<String>> = quot
        .edges()
        .iter()
        .map(|e| vec![e.id.clone(), quot.vertex_id(e.src).into(), quot.vertex_id(e.tgt).into()])
        .collect();
    out += &render(&["edge", "src", "tgt"], &erows);
    Ok(Outcome::ok(out))
}

fn cartan_text(c: &CartanMatrix) -> String {
    let header: Vec<&str> = std::iter::once("").chain(c.labels().iter().map(String::as_str)).collect();
    let rows: Vec<Vec<String>> = c
        .entries()
        .iter()
        .zip(c.labels())
        .map(|(row, l)| std::iter::once(l.clone()).chain(row.iter().map(i64::to_string)).collect())
        .collect();
    render(&header, &rows)
}

fn fold(cli: &Cli, src: &Source) -> InputResult<Outcome> {
    let (name, q, a) = load_quiver(src)?;
    let c = cartan_from_quiver(&q).map_err(e2s)?;
    let folded = fold_cartan(&c, &a).map_err(e2s)?;
    let sd = split_quiver(&q, &a).map_err(e2s)?;
    let sc = cartan_from_quiver(&sd.split).map_err(e2s)?;
    let split_folded = fold_cartan(&sc, &sd.induced).map_err(e2s)?;
    let base_type = classify_cartan(&c);
    let split_type = classify_cartan(&sc);
    let folded_type = classify_cartan(&folded.folded);
    let split_folded_type = classify_cartan(&split_folded.folded);
    if cli.json {
        return Ok(Outcome::ok(pretty(&json!({
            "base_type": base_type,
            "split_type": split_type,
            "folded_type": folded_type,
            "folded_cartan": folded.folded.entries(),
            "folded_labels": folded.folded.labels(),
            "symmetrizer": folded.symmetrizer,
            "split_folded_type": split_folded_type,
        }))));
    }
    let mut out = format!("{name}\n");
    out += &render(
        &["quiver", "type", "folded"],
        &[
            vec!["base".into(), base_type.to_string(), folded_type.to_string()],
            vec!["split".into(), split_type.to_string(), split_folded_type.to_string()],
        ],
    );
    out += "\nfolded Cartan matrix\n";
    out += &cartan_text(&folded.folded);
    Ok(Outcome::ok(out))
}

fn branch(cli: &Cli, args: &BranchArgs) -> InputResult<Outcome> {
    let (name, q, a) = load_quiver(&args.source)?;
    let (quiver, auto) = if args.base {
        (q, a)
    } else {
        let sd = split_quiver(&q, &a).map_err(e2s)?;
        (sd.split, sd.induced)
    };
    let w = parse_dims(&quiver, &args.w)?;
    let c = cartan_from_quiver(&quiver).map_err(e2s)?;
    let f = fold_cartan(&c, &auto).map_err(e2s)?;
    let lambda = highest_weight_from_framing(&w);
    let b = branch_capped(&c, &lambda, &f, args.cap).map_err(e2s)?;
    let total = b.total();
    let from = classify_cartan(&c);
    let to = classify_cartan(&f.folded);
    if cli.json {
        let comps: Vec<Value> = b
            .components
            .iter()
            .zip(&b.folded_dims)
            .map(|((wt, m), d)| json!({"weight": wt, "multiplicity": m, "dim": d.to_string()}))
            .collect();
        return Ok(Outcome::ok(pretty(&json!({
            "algebra": from,
            "subalgebra": to,
            "highest_weight": lambda,
            "dim": b.dim.to_string(),
            "components": comps,
            "total": total.to_string(),
            "conserved": total == b.dim,
        }))));
    }
    let rows: Vec<Vec<String>> = b
        .components
        .iter()
        .zip(&b.folded_dims)
        .map(|((wt, m), d)| vec![format!("{wt:?}"), m.to_string(), d.to_string()])
        .collect();
    let mut out = format!("{name}: {from} -> {to}, highest weight {lambda:?}\n");
    out += &render(&["weight", "mult", "dim"], &rows);
    out += &format!(
        "dimension: {} = {total} ({})\n",
        b.dim,
        if total == b.dim { "conserved" } else { "NOT conserved" }
    );
    Ok(Outcome::ok(out))
}

fn dims(cli: &Cli, args: &DimsArgs) -> InputResult<Outcome> {
    let (name, q, a) = load_quiver(&args.source)?;
    let sd: SplitData = split_quiver(&q, &a).map_err(e2s)?;
    let v = parse_dims(&q, &args.v)?;
    let w = parse_dims(&q, &args.w)?;
    let w_split = match &args.w_split {
        Some(s) => parse_dims(&sd.split, s)?,
        None => {
            let sigma: Vec<Matrix<Q>> = w.iter().map(|&k| Matrix::identity(k as usize)).collect();
            split_framing(&w, &sigma, &sd).map_err(e2s)?
        }
    };
    let recs: Vec<ComponentRecord> = fixed_components(&v, &w, &sd, &w_split).map_err(e2s)?;
    if cli.json {
        return Ok(Outcome::ok(pretty(&serde_json::to_value(&recs).expect("serializable"))));
    }
    let rows: Vec<Vec<String>> = recs
        .iter()
        .map(|r| {
            vec![
                ids(&sd.split, &r.v),
                r.dim.to_string(),
                if r.empty { "empty (formula negative)".into() } else { String::new() },
            ]
        })
        .collect();
    let mut out = format!("{name}: v = {}, w' = {}\n", ids(&q, &v), ids(&sd.split, &w_split));
    out += &render(&["v'", "dim", "note"], &rows);
    Ok(Outcome::ok(out))
}

fn list_corpus(cli: &Cli) -> InputResult<Outcome> {
    let entries = corpus::entries().map_err(e2s)?;
    if cli.json {
        let v: Vec<Value> = entries
            .iter()
            .map(|e| json!({"name": e.name, "vertices": e.quiver.vertex_count(), "order": e.automorphism.order(), "admissible": e.admissible}))
            .collect();
        return Ok(Outcome::ok(pretty(&Value::Array(v))));
    }
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| {
            let ty = cartan_from_quiver(&e.quiver).map(|c| classify_cartan(&c).to_string()).unwrap_or_default();
            vec![e.name.clone(), ty, e.automorphism.order().to_string(), e.admissible.to_string()]
        })
        .collect();
    Ok(Outcome::ok(render(&["name", "type", "order", "admissible"], &rows)))
}

fn verify(cli: &Cli, args: &VerifyArgs) -> InputResult<Outcome> {
    let mut entries = corpus::entries().map_err(e2s)?;
    if !args.entries.is_empty() {
        for n in &args.entries {
            if !entries.iter().any(|e| &e.name == n) {
                return Err(format!("unknown corpus entry {n:?}"));
            }
        }
        entries.retain(|e| args.entries.contains(&e.name));
    }
    let cfg = VerifyConfig {
        theta_trials: args.trials,
        pair_trials: args.trials.div_ceil(2),
        stability_trials: args.trials,
    };
    let report = verify_all(&entries, cli.seed, &cfg);
    let code = if report.failures() > 0 { EXIT_VIOLATION } else { EXIT_OK };
    let stdout = if cli.json {
        pretty(&serde_json::to_value(&report).expect("serializable"))
    } else {
        let rows: Vec<Vec<String>> = report
            .results
            .iter()
            .map(|r| {
                let s = match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Info => "INFO",
                    Status::Skip => "SKIP",
                };
                vec![r.entry.clone(), r.check.clone(), s.into(), r.detail.clone()]
            })
            .collect();
        let count = |s: Status| report.results.iter().filter(|r| r.status == s).count();
        render(&["entry", "check", "status", "detail"], &rows)
            + &format!(
                "seed {}: {} pass, {} fail, {} info, {} skip\n",
                report.seed,
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Info),
                count(Status::Skip)
            )
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

// ---- module documents ----

struct Ctx {
    doc: Document,
    d: DoubledQuiver,
}

impl Ctx {
    fn new(src: &Source) -> InputResult<Self> {
        let doc = load_document(src)?;
        let d = doc.quiver.doubled();
        Ok(Ctx { doc, d })
    }

    fn q(&self) -> &Quiver {
        &self.doc.quiver
    }

    fn a(&self) -> &DiagramAutomorphism {
        &self.doc.automorphism
    }

    fn module(&self, key: &str) -> InputResult<FramedModule<Q>> {
        let v = self.doc.body.get(key).ok_or_else(|| format!("the document has no {key:?}"))?;
        module_from_json(&self.d, v).map_err(|e| format!("{key}: {e}"))
    }

    fn opt_module(&self, key: &str) -> InputResult<Option<FramedModule<Q>>> {
        match self.doc.body.get(key) {
            None => Ok(None),
            Some(_) => self.module(key).map(Some),
        }
    }

    /// Square matrices per vertex of the given sizes; identity when absent.
    fn square(&self, key: &str, sizes: &[usize], required: bool) -> InputResult<Vec<Matrix<Q>>> {
        let v = self.doc.body.get(key);
        if required && v.is_none() {
            return Err(format!("the document has no {key:?}"));
        }
        vertex_matrices_from_json(self.q(), v, |x| (sizes[x], sizes[x]), |x| Matrix::identity(sizes[x]))
            .map_err(|e| format!("{key}: {e}"))
    }

    fn sigma(&self, w: &[usize]) -> InputResult<Vec<Matrix<Q>>> {
        self.square("sigma", w, false)
    }

    fn has(&self, key: &str) -> bool {
        self.doc.body.get(key).is_some()
    }

    fn transition_or_solve(&self, key: &str, sigma: &[Matrix<Q>], m: &FramedModule<Q>) -> InputResult<Vec<Matrix<Q>>> {
        if self.has(key) {
            return self.square(key, &m.v, true);
        }
        find_transition(&self.d, self.a(), sigma, m)
            .map_err(e2s)?
            .ok_or_else(|| format!("no transition for {key:?}: the module is not theta-stable"))
    }

    fn embedding(&self, sub: &FramedModule<Q>, m: &FramedModule<Q>) -> InputResult<Vec<Matrix<Q>>> {
        let v = self.doc.body.get("xi").ok_or("the document has \"sub\" but no \"xi\"")?;
        vertex_matrices_from_json(self.q(), Some(v), |x| (m.v[x], sub.v[x]), |x| Matrix::zeros(m.v[x], sub.v[x]))
            .map_err(|e| format!("xi: {e}"))
    }
}

fn profile_json(p: &EigenProfile) -> Value {
    serde_json::to_value(p).expect("serializable")
}

/// Spectrum of the twisted operator on every orbit.
fn orbit_spectra(ctx: &Ctx, dims: &[usize], g: &[Matrix<Q>]) -> InputResult<Vec<(String, EigenProfile)>> {
    let od = orbit_data(ctx.q(), ctx.a()).map_err(e2s)?;
    Ok(od
        .vertex_orbits
        .iter()
        .map(|orbit| {
            let label = orbit.iter().map(|&x| ctx.q().vertex_id(x)).collect::<Vec<_>>().join("|");
            (label, eigen_profile(&twisted_operator(orbit, ctx.a(), dims, g), od.n))
        })
        .collect())
}

fn spectra_rows(spectra: &[(String, EigenProfile)]) -> Vec<Vec<String>> {
    spectra
        .iter()
        .map(|(label, p)| {
            let grades: Vec<String> =
                p.grades.iter().filter(|g| g.dim > 0).map(|g| format!("{}:{}", g.root, g.dim)).collect();
            vec![label.clone(), grades.join(" "), p.outside.to_string()]
        })
        .collect()
}

fn module(cli: &Cli, cmd: &ModuleCommand) -> InputResult<Outcome> {
    match cmd {
        ModuleCommand::Check(args) => module_check(cli, args),
        ModuleCommand::Theta(args) => module_theta(cli, &args.source),
        ModuleCommand::Transition(args) => module_transition(cli, &args.source),
        ModuleCommand::Witness(args) => module_witness(cli, &args.source),
        ModuleCommand::Eigenspaces(args) => module_eigenspaces(cli, &args.source),
        ModuleCommand::Sample(args) => module_sample(cli, args),
    }
}

fn module_check(cli: &Cli, args: &CheckArgs) -> InputResult<Outcome> {
    let ctx = Ctx::new(&args.source)?;
    let m = ctx.module("module")?;
    let q = ctx.q();
    let failing = check_relations(&ctx.d, &m, RelationMode::Signed).map_err(e2s)?;
    let stable = match failing {
        Some(_) => None,
        None => Some(is_stable(&ctx.d, &m).map_err(e2s)?),
    };
    let destab: Option<Vec<usize>> =
        (stable == Some(false)).then(|| destabilizing_subspace(&ctx.d, &m).iter().map(Matrix::cols).collect());
    let mut ok = failing.is_none() && stable == Some(true);
    let mut report = json!({
        "relations": failing.is_none(),
        "failing_vertex": failing.map(|x| q.vertex_id(x).to_string()),
        "stable": stable,
        "destabilizing_dims": destab.as_ref().map(|v| dims_to_json(q, v)),
    });
    if let Some(sub) = ctx.opt_module("sub")? {
        let xi = ctx.embedding(&sub, &m)?;
        let emb = check_framed_embedding(&ctx.d, &xi, &sub, &m).map_err(e2s)?;
        ok &= emb;
        report["embedding"] = json!(emb);
        if let Some(vid) = &args.hecke {
            let x = q.vertex_index(vid).map_err(e2s)?;
            let h = emb && hecke_profile(&ctx.d, ctx.a(), &xi, &sub, &m, x, args.at_most).map_err(e2s)?;
            ok &= h;
            report["hecke"] = json!(h);
        }
    } else if args.hecke.is_some() {
        return Err("--hecke needs \"sub\" and \"xi\" in the document".into());
    }
    let code = if ok { EXIT_OK } else { EXIT_VIOLATION };
    let stdout = if cli.json {
        pretty(&report)
    } else {
        let yn = |b: bool| if b { "yes" } else { "no" }.to_string();
        let mut rows = vec![vec!["relations".to_string(), yn(failing.is_none())]];
        if let Some(x) = failing {
            rows.push(vec!["failing vertex".into(), q.vertex_id(x).into()]);
        }
        if let Some(s) = stable {
            rows.push(vec!["stable".into(), yn(s)]);
        }
        if let Some(dv) = &destab {
            let dv: Vec<u64> = dv.iter().map(|&k| k as u64).collect();
            rows.push(vec!["destabilizing subspace".into(), ids(q, &dv)]);
        }
        if let Some(e) = report.get("embedding").and_then(Value::as_bool) {
            rows.push(vec!["embedding".into(), yn(e)]);
        }
        if let Some(h) = report.get("hecke").and_then(Value::as_bool) {
            rows.push(vec!["hecke".into(), yn(h)]);
        }
        render(&["property", "value"], &rows)
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

/// Always JSON: the result is a module document.
fn module_theta(_cli: &Cli, src: &Source) -> InputResult<Outcome> {
    let ctx = Ctx::new(src)?;
    let m = ctx.module("module")?;
    let sigma = ctx.sigma(&m.w)?;
    let t = apply_theta(&ctx.d, ctx.a(), &sigma, &m).map_err(e2s)?;
    Ok(Outcome::ok(pretty(&module_to_json(&ctx.d, &t))))
}

fn module_transition(cli: &Cli, src: &Source) -> InputResult<Outcome> {
    let ctx = Ctx::new(src)?;
    let m = ctx.module("module")?;
    let sigma = ctx.sigma(&m.w)?;
    let Some(g) = find_transition(&ctx.d, ctx.a(), &sigma, &m).map_err(e2s)? else {
        let stdout = if cli.json {
            pretty(&json!({"transition": null}))
        } else {
            "no transition: theta(M) is not isomorphic to M\n".into()
        };
        return Ok(Outcome { code: EXIT_VIOLATION, stdout, stderr: String::new() });
    };
    let spectra = orbit_spectra(&ctx, &m.v, &g)?;
    if cli.json {
        let sp: Map<String, Value> = spectra.iter().map(|(l, p)| (l.clone(), profile_json(p))).collect();
        return Ok(Outcome::ok(pretty(&json!({
            "transition": vertex_matrices_to_json(ctx.q(), &g),
            "orbit_spectra": sp,
        }))));
    }
    let mut out = String::from("transition\n");
    for (x, gx) in g.iter().enumerate() {
        out += &format!("{}: {}\n", ctx.q().vertex_id(x), matrix_to_json(gx));
    }
    out += "\n";
    out += &render(&["orbit", "eigenvalues", "outside roots of unity"], &spectra_rows(&spectra));
    Ok(Outcome::ok(out))
}

fn module_witness(cli: &Cli, src: &Source) -> InputResult<Outcome> {
    let ctx = Ctx::new(src)?;
    let m1 = ctx.module("m1")?;
    let sigma = ctx.sigma(&m1.w)?;
    let g = ctx.square("g", &m1.v, true)?;
    let wit = build_theta_witness(&ctx.d, ctx.a(), &sigma, &m1, &g).map_err(e2s)?;
    let q = ctx.q();
    if cli.json {
        let fixed: Vec<Value> = wit
            .fixed_vertices
            .iter()
            .map(|f| {
                json!({
                    "vertex": q.vertex_id(f.vertex),
                    "e": f.e,
                    "transition": profile_json(&f.transition),
                    "block_diagonal_candidate": profile_json(&f.block_diagonal_candidate),
                })
            })
            .collect();
        return Ok(Outcome::ok(pretty(&json!({
            "module": module_to_json(&ctx.d, &wit.module),
            "transition": vertex_matrices_to_json(q, &wit.transition),
            "block_diagonal_candidate": vertex_matrices_to_json(q, &wit.block_diagonal_candidate),
            "candidate_verifies": wit.candidate_verifies,
            "m1_not_theta_stable": wit.m1_not_theta_stable,
            "fixed_vertices": fixed,
        }))));
    }
    let rational = |p: &EigenProfile| {
        p.rational.iter().map(|(x, d)| format!("{}:{d}", format_q(x))).collect::<Vec<_>>().join(" ")
    };
    let rows: Vec<Vec<String>> = wit
        .fixed_vertices
        .iter()
        .flat_map(|f| {
            [
                vec![
                    q.vertex_id(f.vertex).to_string(),
                    "transition".into(),
                    rational(&f.transition),
                    f.transition.outside.to_string(),
                ],
                vec![
                    q.vertex_id(f.vertex).to_string(),
                    "block-diagonal".into(),
                    rational(&f.block_diagonal_candidate),
                    f.block_diagonal_candidate.outside.to_string(),
                ],
            ]
        })
        .collect();
    let mut out = render(&["vertex", "matrix", "rational eigenvalues", "outside +-1"], &rows);
    out += &format!("block-diagonal candidate is a transition: {}\n", wit.candidate_verifies);
    out += &format!(
        "m1 is not theta-stable: {}\n",
        wit.m1_not_theta_stable.map_or("unchecked (m1 not stable)".to_string(), |b| b.to_string())
    );
    Ok(Outcome::ok(out))
}

fn module_eigenspaces(cli: &Cli, src: &Source) -> InputResult<Outcome> {
    let ctx = Ctx::new(src)?;
    let m = ctx.module("module")?;
    let sub = ctx.module("sub")?;
    let xi = ctx.embedding(&sub, &m)?;
    let sigma = ctx.sigma(&m.w)?;
    let g = ctx.transition_or_solve("transition", &sigma, &m)?;
    let g_sub = ctx.transition_or_solve("sub_transition", &sigma, &sub)?;
    let pair = FramedEmbedding { xi, sub, module: m };
    let r = verify_eigenspace_embedding(&ctx.d, ctx.a(), &sigma, &pair, &g_sub, &g).map_err(e2s)?;
    let code = if r.holds { EXIT_OK } else { EXIT_VIOLATION };
    let stdout = if cli.json {
        pretty(&serde_json::to_value(&r).expect("serializable"))
    } else {
        let mut s = format!(
            "holds: {}\neigenvalue classes checked: {}\n",
            r.holds, r.checked_classes
        );
        if let Some(c) = &r.counterexample {
            s += &format!("counterexample at {}: [{}] for factor {}\n", c.vertex, c.vector.join(", "), c.eigen_factor);
        }
        s
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

fn module_sample(cli: &Cli, args: &SampleArgs) -> InputResult<Outcome> {
    let (name, q, a) = load_quiver(&args.source)?;
    let d = q.doubled();
    let v: Vec<usize> = parse_dims(&q, &args.v)?.into_iter().map(|x| x as usize).collect();
    let w: Vec<usize> = parse_dims(&q, &args.w)?.into_iter().map(|x| x as usize).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let p = random_theta_pair(&d, &a, &v, &w, &mut rng).map_err(e2s)?;
    let quiver = match &args.source.corpus {
        Some(_) => json!({"corpus": name}),
        None => json!({"quiver": serde_json::to_value(QuiverJson::from_quiver(&q, Some(&a))).expect("serializable")}),
    };
    let mut doc = quiver.as_object().cloned().unwrap_or_default();
    doc.insert("module".into(), module_to_json(&d, &p.embedding.module));
    doc.insert("sigma".into(), vertex_matrices_to_json(&q, &p.sigma));
    doc.insert("transition".into(), vertex_matrices_to_json(&q, &p.transition));
    doc.insert("sub".into(), module_to_json(&d, &p.embedding.sub));
    doc.insert("sub_transition".into(), vertex_matrices_to_json(&q, &p.sub_transition));
    doc.insert("xi".into(), vertex_matrices_to_json(&q, &p.embedding.xi));
    Ok(Outcome::ok(pretty(&Value::Object(doc))))
}

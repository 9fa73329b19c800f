//! One function per subcommand; each returns JSON and a flag for found contradictions.

use crate::golden::compare_golden;
use crate::{CasesCmd, Cli, CliError, Command, GramArg, HyperCmd, Outcome, ScalingCmd, TilingCmd};
use dualcell_cases::hypercomb::{
    enumerate_k5_schemes, find_5_10_or_6_11, moment_audit, random_closed, HyperError, Hypergraph4, HypergraphJson,
};
use dualcell_cases::syssolve::{cone_test_pipeline, final_case_check, run_all_cases};
use dualcell_core::lattice::{belts_of, dv_cell, facet_vectors, venkov_check, Lattice, LatticeJson};
use dualcell_core::lifting::{recover_qform, verify_lifting, Generatrissa};
use dualcell_core::rat::{fmt_rat, jvec, JRat, Rat};
use dualcell_core::scaling::{
    coherence_pairs, propagate, test_coherence, verify_canonical, GainFunction, NormalFrame, ScalingAssignment,
};
use dualcell_core::tiling::{classify_dual3, TilingComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::Path;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Read { path: p.clone(), source: e })?;
    serde_json::from_str(&text).map_err(|e| CliError::Json { path: p, line: e.line(), column: e.column(), msg: e.to_string() })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn ok(json: Value) -> Result<Outcome, CliError> {
    Ok(Outcome { json, flagged: false })
}

fn lattice(g: &GramArg, max_dim: usize) -> Result<Lattice, CliError> {
    let j: LatticeJson = read_json(&g.gram)?;
    if j.dim > max_dim {
        return Err(CliError::Input(format!("lattice dimension {} exceeds the cap {max_dim}", j.dim)));
    }
    j.to_lattice().map_err(|e| CliError::Input(format!("{}: {e}", g.gram.display())))
}

fn complex(g: &GramArg, max_dim: usize) -> Result<TilingComplex, CliError> {
    TilingComplex::build(&lattice(g, max_dim)?).map_err(|e| CliError::Failed(e.to_string()))
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

pub fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let m = cli.max_dim;
    match &cli.command {
        Command::Dv(g) => dv(&lattice(g, m)?),
        Command::Tiling { cmd: TilingCmd::Audit(g) } => tiling_audit(&complex(g, m)?),
        Command::DualCells(g) => dual_cells(&complex(g, m)?),
        Command::Irreducible(g) => irreducible(&complex(g, m)?),
        Command::Scaling { cmd } => match cmd {
            ScalingCmd::Build(g) => scaling_build(&complex(g, m)?),
            ScalingCmd::Verify { gram, scaling } => scaling_verify(&complex(gram, m)?, &read_json(scaling)?),
            ScalingCmd::Coherence(g) => scaling_coherence(&complex(g, m)?),
        },
        Command::Lift(g) => lift(&complex(g, m)?),
        Command::Hyper { cmd } => match cmd {
            HyperCmd::EnumerateK5 => ok(to_value(&enumerate_k5_schemes())),
            HyperCmd::Audit { input: Some(p), .. } => hyper_audit(&hypergraph(p)?),
            HyperCmd::Audit { input: None, random } => hyper_audit_random(*random, cli.seed),
            HyperCmd::FindSubgraph { input } => find_subgraph(&hypergraph(input)?),
        },
        Command::Cases { cmd } => match cmd {
            CasesCmd::RunAll { golden } => cases_run_all(golden.as_deref()),
            CasesCmd::ConePipeline => ok(to_value(&cone_test_pipeline())),
            CasesCmd::FinalCase { x } => final_case(x),
        },
    }
}

fn dv(l: &Lattice) -> Result<Outcome, CliError> {
    let p = dv_cell(l);
    let venkov = venkov_check(&p);
    let belts = belts_of(&p).map_err(failed)?;
    let fv: Vec<Vec<JRat>> = facet_vectors(&p).iter().map(|v| jvec(v)).collect();
    Ok(Outcome {
        json: json!({
            "lattice": l.to_json(),
            "polytope": p.to_json(),
            "facet_count": p.facets.len(),
            "vertex_count": p.vertices.len(),
            "facet_vectors": fv,
            "belt_lengths": belts.iter().map(|b| b.len()).collect::<Vec<_>>(),
            "venkov": venkov,
            "venkov_passes": venkov.passes(),
        }),
        flagged: !venkov.passes(),
    })
}

fn tiling_audit(c: &TilingComplex) -> Result<Outcome, CliError> {
    let audit = c.audit().map_err(failed)?;
    let skinny = c.skinny_audit();
    Ok(Outcome { json: json!({ "audit": audit, "skinny": skinny }), flagged: !skinny.ok() })
}

fn dual_cells(c: &TilingComplex) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for o in 0..c.orbits.len() {
        let dc = c.dual_cell(&c.rep(o));
        let class = if dc.combdim == 3 { Some(classify_dual3(&dc).map_err(failed)?) } else { None };
        if dc.combdim != dc.dim {
            mismatches.push(o);
        }
        rows.push(json!({
            "orbit": o,
            "face_dim": c.orbits[o].dim,
            "combdim": dc.combdim,
            "dim": dc.dim,
            "vertices": dc.verts,
            "classification": class,
        }));
    }
    Ok(Outcome { json: json!({ "cells": rows, "dimension_mismatches": mismatches }), flagged: !mismatches.is_empty() })
}

fn irreducible(c: &TilingComplex) -> Result<Outcome, CliError> {
    let irr = c.is_3_irreducible().map_err(failed)?;
    let types: Vec<Value> = irr.types.iter().map(|(o, t)| json!({ "orbit": o, "type": t })).collect();
    let witness = irr.witness.map(|(o, t)| json!({ "orbit": o, "type": t }));
    ok(json!({ "three_irreducible": irr.irreducible, "witness": witness, "dual3_types": types }))
}

fn canonical_scaling(c: &TilingComplex, fr: &NormalFrame) -> Result<Result<ScalingAssignment, Value>, CliError> {
    let gain = GainFunction::from_d2_stars(c, fr).map_err(failed)?;
    let d = c.dim() as i32;
    let seed = c.orbits_of_dim(d - 1)[0];
    Ok(propagate(c, &gain, seed).map_err(|w| {
        json!({ "edges": w.edges, "orbits": w.orbits, "product": JRat(w.product) })
    }))
}

fn scaling_build(c: &TilingComplex) -> Result<Outcome, CliError> {
    let fr = NormalFrame::canonical(c);
    match canonical_scaling(c, &fr)? {
        Ok(s) => {
            let check = verify_canonical(c, &s, &fr).map_err(failed)?;
            Ok(Outcome {
                json: json!({ "factors": s.to_json(), "canonical": check.ok, "violated": check.violated }),
                flagged: !check.ok,
            })
        }
        Err(w) => Ok(Outcome { json: json!({ "inconsistency": w }), flagged: true }),
    }
}

fn scaling_verify(c: &TilingComplex, raw: &BTreeMap<String, JRat>) -> Result<Outcome, CliError> {
    let d = c.dim() as i32;
    let mut factors = BTreeMap::new();
    for (k, v) in raw {
        let o: usize = k.parse().map_err(|_| CliError::Input(format!("scaling key {k:?} is not an orbit id")))?;
        factors.insert(o, v.0.clone());
    }
    for o in c.orbits_of_dim(d - 1) {
        match factors.get(&o) {
            None => return Err(CliError::Input(format!("no factor for facet orbit {o}"))),
            Some(v) if *v <= Rat::from_integer(0.into()) => {
                return Err(CliError::Input(format!("factor for facet orbit {o} is not positive: {}", fmt_rat(v))))
            }
            _ => {}
        }
    }
    let s = ScalingAssignment { factors };
    let check = verify_canonical(c, &s, &NormalFrame::canonical(c)).map_err(failed)?;
    Ok(Outcome { json: json!({ "canonical": check.ok, "violated": check.violated }), flagged: !check.ok })
}

fn scaling_coherence(c: &TilingComplex) -> Result<Outcome, CliError> {
    let fr = NormalFrame::canonical(c);
    let mut rows = Vec::new();
    let mut all = true;
    for (f2, f4) in coherence_pairs(c) {
        let r = test_coherence(c, &c.dual_cell(&f2), &c.dual_cell(&f4), &fr).map_err(failed)?;
        all &= r.coherent;
        rows.push(json!({
            "parallelogram": f2,
            "cell": f4,
            "coherent": r.coherent,
            "restricted": [jvec(&r.restricted[0]), jvec(&r.restricted[1])],
        }));
    }
    Ok(Outcome { json: json!({ "pairs": rows, "all_coherent": all }), flagged: !all })
}

fn lift(c: &TilingComplex) -> Result<Outcome, CliError> {
    if c.dim() != 2 {
        return Err(CliError::Input(format!("lift needs a 2-dimensional lattice, got dimension {}", c.dim())));
    }
    let fr = NormalFrame::canonical(c);
    let s = match canonical_scaling(c, &fr)? {
        Ok(s) => s,
        Err(w) => return Ok(Outcome { json: json!({ "inconsistency": w }), flagged: true }),
    };
    let g = Generatrissa::build(c, &s, &fr).map_err(failed)?;
    let q = recover_qform(&g).map_err(failed)?;
    let r = verify_lifting(&g, &q);
    let good = r.tangency && r.gradients && r.convexity;
    Ok(Outcome {
        json: json!({
            "qform": {
                "basis": q.basis,
                "coefficients": q.coefficients.iter().map(|x| JRat(x.clone())).collect::<Vec<_>>(),
                "matrix": q.matrix.iter().map(|r| jvec(r)).collect::<Vec<_>>(),
            },
            "report": r,
        }),
        flagged: !good,
    })
}

fn hypergraph(path: &Path) -> Result<Hypergraph4, CliError> {
    let j: HypergraphJson = read_json(path)?;
    Hypergraph4::from_json(&j).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn hyper_audit(h: &Hypergraph4) -> Result<Outcome, CliError> {
    match moment_audit(h) {
        Ok(a) => {
            let holds = a.all_hold();
            Ok(Outcome { json: json!({ "closed": true, "audit": a, "all_hold": holds }), flagged: !holds })
        }
        Err(HyperError::NotClosed(v)) => Ok(Outcome { json: json!({ "closed": false, "violation": v }), flagged: true }),
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

fn hyper_audit_random(n: usize, seed: u64) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut all = true;
    for _ in 0..n {
        // R = 7 admits no closed hypergraph
        let r = [5, 6, 8][rng.gen_range(0..3)];
        let h = random_closed(r, &mut rng).ok_or_else(|| CliError::Failed(format!("no random closed hypergraph with R = {r}")))?;
        let a = moment_audit(&h).map_err(failed)?;
        all &= a.all_hold();
        rows.push(json!({ "hypergraph": h.to_json(), "r": a.r, "v": a.v, "all_hold": a.all_hold() }));
    }
    Ok(Outcome { json: json!({ "seed": seed, "instances": rows, "all_hold": all }), flagged: !all })
}

fn find_subgraph(h: &Hypergraph4) -> Result<Outcome, CliError> {
    match find_5_10_or_6_11(h) {
        Ok(f) => ok(to_value(&f)),
        Err(HyperError::NotClosed(v)) => Ok(Outcome { json: json!({ "closed": false, "violation": v }), flagged: true }),
        Err(e) => Err(CliError::Failed(e.to_string())),
    }
}

fn cases_run_all(golden: Option<&Path>) -> Result<Outcome, CliError> {
    let t = run_all_cases().map_err(failed)?;
    let mut json = json!({ "cases": t, "open_rows": t.open_rows() });
    let mut flagged = t.five_ten.iter().chain(&t.six_eleven).any(|r| r.contradicted());
    if let Some(dir) = golden {
        let g = compare_golden(&t, &dir.join("cases.json"))?;
        flagged |= !g.mismatches.is_empty();
        json["golden"] = to_value(&g);
    }
    Ok(Outcome { json, flagged })
}

fn final_case(x: &str) -> Result<Outcome, CliError> {
    let v: Vec<Rat> = x
        .split(',')
        .map(|s| s.trim().parse::<Rat>().map_err(|_| CliError::Input(format!("--x: not a rational: {s:?}"))))
        .collect::<Result<_, _>>()?;
    let r = final_case_check(&v).map_err(failed)?;
    Ok(Outcome { flagged: r.contradiction, json: to_value(&r) })
}

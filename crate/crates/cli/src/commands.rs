use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use kset_core::families::Family;
use kset_core::graph::{automorphism_group, from_edge_list, from_graph6, to_edge_list, to_graph6, Graph, SrgParams};
use kset_core::homogeneity::{
    binomial, census_counts_exhaustive, check_witness, is_k_homogeneous, is_k_set_homogeneous, omega_counts,
    omega_index, resolve_group, subgraph_census, Mode,
};
use kset_core::permgrp::{orbital_report, GeneratorFile, PermutationGroup};
use kset_core::srgmath::{
    builtin_ledger, divisibility_screen, load_ledger, replay_ledger, Factored, Verdict,
};
use serde_json::{json, Value};

use crate::output::{write_atomic, Report};
use crate::{RunConfig, EXIT_BUDGET, EXIT_FAILS, EXIT_OK};

/// Reads graph6 (optionally with a `>>graph6<<` header) or an edge list
/// starting with an `n m` line; the first significant line decides.
pub fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let g = if first.split_whitespace().count() > 1 {
        from_edge_list(&text)
    } else {
        from_graph6(first)
    };
    g.with_context(|| format!("parsing {}", path.display()))
}

pub fn read_group(path: &Path) -> anyhow::Result<PermutationGroup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: GeneratorFile = serde_json::from_str(&text)
        .map_err(|e| kset_core::Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(PermutationGroup::from_generator_file(&file)?)
}

fn read_optional_group(path: Option<&Path>) -> anyhow::Result<Option<PermutationGroup>> {
    path.map(read_group).transpose()
}

pub fn construct(
    _cfg: &RunConfig,
    family: &str,
    params: &[String],
    graph_out: Option<&Path>,
    edge_list: bool,
) -> anyhow::Result<Report> {
    let fam = Family::parse(family, params)?;
    let g = fam.build()?;
    let g6 = to_graph6(&g);
    if let Some(p) = graph_out {
        let body = if edge_list { to_edge_list(&g) } else { format!("{g6}\n") };
        write_atomic(p, body.as_bytes())?;
    }
    let json = json!({
        "descriptor": fam.descriptor(&g),
        "edges": g.edge_count(),
        "graph6": g6,
        "labels": g.labels(),
    });
    Ok(Report::new(json, EXIT_OK).with_text(vec![g6]))
}

fn orbitals_json(group: &PermutationGroup) -> anyhow::Result<Value> {
    if !group.is_transitive() {
        return Ok(Value::Null);
    }
    let r = orbital_report(group)?;
    Ok(json!({
        "rank": r.rank,
        "subdegrees": r.subdegrees,
        "self_paired": r.orbitals.iter().map(|o| o.self_paired).collect::<Vec<_>>(),
        "paired_with": r.orbitals.iter().map(|o| o.paired_with).collect::<Vec<_>>(),
    }))
}

pub fn analyze(
    cfg: &RunConfig,
    graph: &Path,
    group: Option<&Path>,
    save_group: Option<&Path>,
) -> anyhow::Result<Report> {
    let g = read_graph(graph)?;
    let supplied = read_optional_group(group)?;
    let aut = automorphism_group(&g, &cfg.search())?;
    if let Some(p) = save_group {
        let body = serde_json::to_string(&aut.group.to_generator_file())? + "\n";
        write_atomic(p, body.as_bytes())?;
    }
    let aut_json = json!({
        "order": aut.group.order().to_string(),
        "certified": aut.certified,
        "search_nodes": aut.nodes,
        "generators": aut.group.generators().len(),
        "transitive": aut.group.is_transitive(),
        "orbitals": if aut.certified { orbitals_json(&aut.group)? } else { Value::Null },
    });
    let supplied_json = match &supplied {
        Some(h) => {
            kset_core::homogeneity::ensure_automorphisms(&g, h)?;
            json!({
                "order": h.order().to_string(),
                "generators": h.generators().len(),
                "transitive": h.is_transitive(),
                "orbitals": orbitals_json(h)?,
            })
        }
        None => Value::Null,
    };
    let json = json!({
        "vertices": g.order(),
        "edges": g.edge_count(),
        "regular_degree": g.is_regular(),
        "connected": g.is_connected(),
        "srg": g.srg_params().ok(),
        "automorphism_group": aut_json,
        "group": supplied_json,
    });
    Ok(Report::new(json, if aut.certified { EXIT_OK } else { EXIT_BUDGET }))
}

pub fn homtest(cfg: &RunConfig, graph: &Path, k: usize, mode: &str, group: Option<&Path>) -> anyhow::Result<Report> {
    let g = read_graph(graph)?;
    let supplied = read_optional_group(group)?;
    let mode = Mode::parse(mode)?;
    let opts = cfg.homogeneity();
    // resolve once so the witness can be re-checked against the same group
    let (h, _) = resolve_group(&g, supplied.as_ref(), &opts.search)?;
    let report = match mode {
        Mode::SetHomogeneous => is_k_set_homogeneous(&g, Some(&h), k, &opts)?,
        Mode::Homogeneous => is_k_homogeneous(&g, Some(&h), k, &opts)?,
    };
    let checked = report
        .witness
        .as_ref()
        .map(|w| check_witness(&g, &h, mode, w, cfg.budget_orbit_nodes))
        .transpose()?;
    let mut json = serde_json::to_value(&report)?;
    json["group"]["source"] = json!(if supplied.is_some() { "supplied" } else { "automorphism_group" });
    json["witness_checked"] = json!(checked);
    let code = if report.verdict { EXIT_OK } else { EXIT_FAILS };
    let mut text = vec![format!(
        "{}: {}",
        if report.verdict { "holds" } else { "fails" },
        json["mode"].as_str().unwrap_or_default()
    )];
    if let Some(w) = &report.witness {
        text.push(format!("witness order {}: {:?} vs {:?}", w.order, w.first, w.second));
    }
    Ok(Report::new(json, code).with_text(text))
}

pub fn census(cfg: &RunConfig, graph: &Path, m: usize, group: Option<&Path>) -> anyhow::Result<Report> {
    let g = read_graph(graph)?;
    let supplied = read_optional_group(group)?;
    let opts = cfg.homogeneity();
    let (h, source) = resolve_group(&g, supplied.as_ref(), &opts.search)?;
    let entries = subgraph_census(&g, &h, m, &opts)?;
    let exhaustive = if binomial(g.order() as u64, m as u64) <= cfg.budget_subsets as u128 {
        let counts = census_counts_exhaustive(&g, m, cfg.budget_subsets)?;
        let nonzero: Vec<(usize, u64)> = counts.iter().copied().enumerate().filter(|&(_, c)| c > 0).collect();
        let ours: Vec<(usize, u64)> = entries.iter().map(|e| (e.class, e.count)).collect();
        Some(nonzero == ours)
    } else {
        None
    };
    let formula = match (m, g.srg_params()) {
        (3, Ok(p)) => {
            let omega = omega_counts(&p)?;
            Some(entries.iter().all(|e| omega[omega_index(e.class)] == e.count))
        }
        _ => None,
    };
    let json = json!({
        "m": m,
        "group": {"source": source, "order": h.order().to_string(), "generators": h.generators().len()},
        "classes": entries,
        "exhaustive_counts_agree": exhaustive,
        "srg_formula_agrees": formula,
    });
    let text = entries
        .iter()
        .map(|e| format!("class {} ({}): {} subsets in {} orbit(s)", e.class, e.class_graph, e.count, e.orbits))
        .collect();
    Ok(Report::new(json, EXIT_OK).with_text(text))
}

pub fn parse_params(s: &str) -> anyhow::Result<SrgParams> {
    let xs: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| kset_core::Error::Parse(format!("bad parameter list {s:?}")))?;
    match xs[..] {
        [v, k, l, mu] => Ok(SrgParams::new(v, k, l, mu)),
        _ => Err(kset_core::Error::Parse(format!("expected v,k,lambda,mu, got {s:?}")).into()),
    }
}

pub fn screen(params: &str, order: &str) -> anyhow::Result<Report> {
    let p = parse_params(params)?;
    let order: Factored = order.parse()?;
    let r = divisibility_screen(&p, &order)?;
    let code = if r.verdict == Verdict::Eliminated { EXIT_FAILS } else { EXIT_OK };
    let line = match r.first_failing {
        Some(i) => format!("eliminated: omega{i} = {} does not divide {}", r.omegas[i - 1], r.order),
        None => format!("passes: every order-3 count divides {}", r.order),
    };
    Ok(Report::new(serde_json::to_value(&r)?, code).with_text(vec![line]))
}

pub fn replay(ledger: Option<&Path>) -> anyhow::Result<Report> {
    let records = match ledger {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            load_ledger(&text)?
        }
        None => builtin_ledger()?,
    };
    if records.is_empty() {
        bail!(kset_core::Error::Parse("ledger has no records".into()));
    }
    let outcomes = replay_ledger(&records)?;
    let mismatches: Vec<&str> = outcomes.iter().filter(|o| !o.matches).map(|o| o.label.as_str()).collect();
    let text = outcomes
        .iter()
        .map(|o| {
            format!(
                "{} {} [{}] {} = {} vs {}",
                if o.matches { "MATCH" } else { "MISMATCH" },
                o.label,
                o.tag,
                o.expression,
                o.value,
                o.order
            )
        })
        .collect();
    let code = if mismatches.is_empty() { EXIT_OK } else { EXIT_FAILS };
    let json = json!({"records": outcomes, "mismatches": mismatches});
    Ok(Report::new(json, code).with_text(text))
}

//! Instance suites for the classification results, one line per check.

use anyhow::{ensure, Context};
use kset_core::families::{
    affine_polar, complete_multipartite, disjoint_cliques, elliptic_orthogonal, hamming, higman_sims, mclaughlin,
    paley, paley_fourth_power_group, schlafli, unitary36,
};
use kset_core::formspace::{projective_line_group, FormType};
use kset_core::graph::{automorphism_group, Graph, SrgParams};
use kset_core::homogeneity::{
    check_witness, is_k_homogeneous, is_k_set_homogeneous, subgraph_census, HomogeneityReport, Mode,
};
use kset_core::permgrp::{coset_action, find_subgroup_of_order, orbital_report, PermutationGroup};
use serde::Serialize;
use serde_json::json;

use crate::output::Report;
use crate::{RunConfig, EXIT_FAILS, EXIT_OK};

pub const SUITES: [&str; 5] = ["thm1.1", "thm1.2", "thm1.3", "thm1.4-psu33", "appendix1"];

#[derive(Serialize)]
struct Check {
    suite: &'static str,
    name: String,
    passed: bool,
    detail: String,
}

struct Suite<'a> {
    name: &'static str,
    cfg: &'a RunConfig,
    checks: Vec<Check>,
}

impl Suite<'_> {
    /// Runs one check; an error, including an exhausted budget, is a failure.
    fn check(&mut self, name: &str, f: impl FnOnce(&RunConfig) -> anyhow::Result<(bool, String)>) {
        let (passed, detail) = match f(self.cfg) {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e:#}")),
        };
        self.checks.push(Check {
            suite: self.name,
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn certified_aut(g: &Graph, cfg: &RunConfig) -> anyhow::Result<PermutationGroup> {
    let r = automorphism_group(g, &cfg.search())?;
    ensure!(r.certified, "automorphism search stopped after {} nodes", r.nodes);
    Ok(r.group)
}

/// Both testers at order `k`, with any witness re-checked by orbit enumeration.
fn both(g: &Graph, group: &PermutationGroup, k: usize, cfg: &RunConfig) -> anyhow::Result<[HomogeneityReport; 2]> {
    let opts = cfg.homogeneity();
    let set = is_k_set_homogeneous(g, Some(group), k, &opts)?;
    let full = is_k_homogeneous(g, Some(group), k, &opts)?;
    for (r, mode) in [(&set, Mode::SetHomogeneous), (&full, Mode::Homogeneous)] {
        if let Some(w) = &r.witness {
            ensure!(
                check_witness(g, group, mode, w, cfg.budget_orbit_nodes)?,
                "witness {:?} / {:?} does not confirm",
                w.first,
                w.second
            );
        }
    }
    Ok([set, full])
}

fn verdicts(g: &Graph, k: usize, cfg: &RunConfig) -> anyhow::Result<(bool, bool)> {
    let aut = certified_aut(g, cfg)?;
    let [s, f] = both(g, &aut, k, cfg)?;
    Ok((s.verdict, f.verdict))
}

/// Checks that both testers return `expected` at order `k` on every graph.
fn all_verdicts(graphs: &[(String, Graph)], k: usize, expected: bool, cfg: &RunConfig) -> anyhow::Result<(bool, String)> {
    let mut bad = Vec::new();
    for (name, g) in graphs {
        let (s, f) = verdicts(g, k, cfg)?;
        if (s, f) != (expected, expected) {
            bad.push(format!("{name} (set {s}, full {f})"));
        }
    }
    Ok(if bad.is_empty() {
        (true, format!("{} graphs", graphs.len()))
    } else {
        (false, format!("unexpected: {}", bad.join(", ")))
    })
}

fn sorted(mut xs: Vec<usize>) -> Vec<usize> {
    xs.sort_unstable();
    xs
}

fn thm1_1(s: &mut Suite) {
    s.check("C5 and K3 x K3 are 5-homogeneous", |cfg| {
        all_verdicts(&[("C5".into(), Graph::cycle(5)), ("K3 x K3".into(), hamming(3)?)], 5, true, cfg)
    });
    s.check("nK_m, n, m <= 4, are 5-homogeneous", |cfg| {
        let mut gs = Vec::new();
        for n in 1..=4 {
            for m in 1..=4 {
                gs.push((format!("{n}K_{m}"), disjoint_cliques(n, m)?));
            }
        }
        all_verdicts(&gs, 5, true, cfg)
    });
    s.check("K_n[m], n, m <= 4, are 5-homogeneous", |cfg| {
        let mut gs = Vec::new();
        for n in 1..=4 {
            for m in 1..=4 {
                gs.push((format!("K_{n}[{m}]"), complete_multipartite(n, m)?));
            }
        }
        all_verdicts(&gs, 5, true, cfg)
    });
    s.check("Schlafli graph: |Aut| = 51840", |cfg| {
        let order = certified_aut(&schlafli()?, cfg)?.order();
        Ok((order == 51840u32.into(), format!("order {order}")))
    });
    s.check("Schlafli graph: 4-homogeneous, not 5-homogeneous", |cfg| {
        let g = schlafli()?;
        let aut = certified_aut(&g, cfg)?;
        let [s4, f4] = both(&g, &aut, 4, cfg)?;
        let [s5, f5] = both(&g, &aut, 5, cfg)?;
        let ok = s4.verdict && f4.verdict && !s5.verdict && !f5.verdict;
        let w = s5.witness.as_ref().context("no order-5 witness")?;
        Ok((ok, format!("order-5 witness {:?} / {:?}", w.first, w.second)))
    });
    s.check("K_n x K_n, n = 4, 5: 3-homogeneous, not 4-homogeneous", |cfg| {
        let gs = [("K4 x K4".to_string(), hamming(4)?), ("K5 x K5".to_string(), hamming(5)?)];
        let (a, da) = all_verdicts(&gs, 3, true, cfg)?;
        let (b, db) = all_verdicts(&gs, 4, false, cfg)?;
        Ok((a && b, format!("k = 3: {da}; k = 4: {db}")))
    });
}

fn unitary_checks(s: &mut Suite) {
    s.check("PSU(3,3) on 36 points: rank 4, subdegrees 1, 7, 7, 21, one self-paired orbital", |cfg| {
        let u = unitary36(cfg.seed)?;
        let r = &u.report;
        let sp = r.self_paired_nontrivial();
        let ok = u.group.order() == 6048u32.into()
            && r.rank == 4
            && sorted(r.subdegrees.clone()) == [1, 7, 7, 21]
            && sp.len() == 1
            && r.orbitals[sp[0]].size == 36 * 21;
        Ok((ok, format!("rank {}, subdegrees {:?}, self-paired {:?}", r.rank, r.subdegrees, sp)))
    });
    s.check("valency 14 and 21 graphs: (G,2)-set-homogeneous, not (G,2)-homogeneous", |cfg| {
        let u = unitary36(cfg.seed)?;
        let mut detail = Vec::new();
        let mut ok = true;
        for (name, g) in [("valency 14", &u.valency14), ("valency 21", &u.valency21)] {
            let [set, full] = both(g, &u.group, 2, cfg)?;
            ok &= set.verdict && !full.verdict;
            detail.push(format!("{name}: set {}, full {}", set.verdict, full.verdict));
        }
        Ok((ok, detail.join("; ")))
    });
}

fn thm1_2(s: &mut Suite) {
    unitary_checks(s);
    for q in [13u64, 29] {
        s.check(&format!("Paley({q}): odd-order group of rank 5, no self-paired orbital, 2-set-homogeneous"), |cfg| {
            let g = paley(q)?;
            let h = paley_fourth_power_group(q)?;
            let r = orbital_report(&h)?;
            let odd = h.order().bit(0);
            let set = is_k_set_homogeneous(&g, Some(&h), 2, &cfg.homogeneity())?.verdict;
            let ok = odd && r.rank == 5 && r.self_paired_nontrivial().is_empty() && set;
            Ok((ok, format!("|H| = {}, rank {}, subdegrees {:?}", h.order(), r.rank, r.subdegrees)))
        });
        s.check(&format!("Paley({q}): Aut has rank 3 and is 2-homogeneous"), |cfg| {
            let g = paley(q)?;
            let aut = certified_aut(&g, cfg)?;
            let r = orbital_report(&aut)?;
            let [set, full] = both(&g, &aut, 2, cfg)?;
            Ok((r.rank == 3 && set.verdict && full.verdict, format!("|Aut| = {}, rank {}", aut.order(), r.rank)))
        });
    }
}

fn order3_transitive(g: &Graph, aut: &PermutationGroup, cfg: &RunConfig) -> anyhow::Result<(bool, String)> {
    let census = subgraph_census(g, aut, 3, &cfg.homogeneity())?;
    const NAMES: [&str; 4] = ["3K1", "K1+K2", "P3", "K3"];
    let orbits: Vec<String> = census.iter().map(|e| format!("{} {}", NAMES[e.class], e.orbits)).collect();
    Ok((census.iter().all(|e| e.orbits == 1), format!("orbits per class {}", orbits.join(", "))))
}

fn thm1_3(s: &mut Suite) {
    s.check("VO+-(2m,2), m <= 3, and complements: 3-homogeneous", |cfg| {
        let mut gs = Vec::new();
        for m in 1..=3 {
            for eps in [FormType::Plus, FormType::Minus] {
                let g = affine_polar(m, 2, eps)?;
                let name = format!("VO{}({},2)", eps.symbol(), 2 * m);
                gs.push((format!("complement of {name}"), g.complement()));
                gs.push((name, g));
            }
        }
        all_verdicts(&gs, 3, true, cfg)
    });
    s.check("elliptic orthogonal graphs, q = 2, 3, and complements: 3-homogeneous", |cfg| {
        let mut gs = Vec::new();
        for q in [2, 3] {
            let g = elliptic_orthogonal(q)?;
            gs.push((format!("complement of O-(6,{q})"), g.complement()));
            gs.push((format!("O-(6,{q})"), g));
        }
        all_verdicts(&gs, 3, true, cfg)
    });
    s.check("Higman-Sims graph: srg(100,22,0,6), |Aut| = 88704000, transitive on order-3 classes", |cfg| {
        let g = higman_sims()?;
        let aut = certified_aut(&g, cfg)?;
        let (t, d) = order3_transitive(&g, &aut, cfg)?;
        let ok = g.srg_params()? == SrgParams::new(100, 22, 0, 6) && aut.order() == 88_704_000u32.into() && t;
        Ok((ok, format!("|Aut| = {}, {d}", aut.order())))
    });
    s.check("McLaughlin graph: srg(275,112,30,56), transitive on order-3 classes", |cfg| {
        let g = mclaughlin()?;
        let aut = certified_aut(&g, cfg)?;
        let (t, d) = order3_transitive(&g, &aut, cfg)?;
        let ok = g.srg_params()? == SrgParams::new(275, 112, 30, 56) && t;
        Ok((ok, format!("|Aut| = {}, {d}", aut.order())))
    });
}

fn thm1_4(s: &mut Suite) {
    s.check("PSU(3,3) on 36 points: the two orbitals of length 7 are paired", |cfg| {
        let u = unitary36(cfg.seed)?;
        let sevens: Vec<usize> = (1..u.report.rank).filter(|&i| u.report.orbitals[i].size == 36 * 7).collect();
        let ok = sevens.len() == 2 && u.report.orbitals[sevens[0]].paired_with == sevens[1];
        Ok((ok, format!("orbitals {sevens:?}")))
    });
    unitary_checks(s);
    for (name, valency) in [("valency 14", 14usize), ("valency 21", 21)] {
        s.check(&format!("{name} graph: Aut of order 12096 containing G, rank 3, subdegrees 1, 14, 21"), |cfg| {
            let u = unitary36(cfg.seed)?;
            let g = if valency == 14 { &u.valency14 } else { &u.valency21 };
            let aut = certified_aut(g, cfg)?;
            let r = orbital_report(&aut)?;
            let contains = u.group.generators().iter().all(|p| aut.contains(p));
            let ok = aut.order() == 12096u32.into() && contains && r.rank == 3 && sorted(r.subdegrees.clone()) == [1, 14, 21];
            Ok((ok, format!("|Aut| = {}, rank {}, subdegrees {:?}", aut.order(), r.rank, r.subdegrees)))
        });
    }
}

fn coset_row(q: u64, order: u64, sub: u64, expected: &[usize], cfg: &RunConfig) -> anyhow::Result<(bool, String)> {
    let (_, g) = projective_line_group(q, false)?;
    ensure!(g.order() == order.into(), "group of order {} on the projective line", g.order());
    let h = find_subgroup_of_order(&g, sub, cfg.seed, 10_000)?;
    let action = coset_action(&g, &h, 10_000)?;
    let r = orbital_report(&action.group)?;
    let subdegrees = sorted(r.subdegrees);
    let ok = action.degree as u64 == order / sub && subdegrees == expected;
    Ok((ok, format!("degree {}, subdegrees {subdegrees:?}", action.degree)))
}

fn appendix1(s: &mut Suite) {
    s.check("PGL(2,7) on the cosets of D16: degree 21, subdegrees 1, 4, 8, 8", |cfg| {
        coset_row(7, 336, 16, &[1, 4, 8, 8], cfg)
    });
    s.check("PSL(2,8) on the cosets of D18: degree 28, subdegrees 1, 9, 9, 9", |cfg| {
        coset_row(8, 504, 18, &[1, 9, 9, 9], cfg)
    });
}

pub fn run(cfg: &RunConfig, selector: &str) -> anyhow::Result<Report> {
    let names: Vec<&'static str> = if selector == "all" {
        SUITES.to_vec()
    } else {
        SUITES.iter().copied().filter(|&s| s == selector).collect()
    };
    if names.is_empty() {
        return Err(kset_core::Error::Parse(format!("unknown suite {selector:?}")).into());
    }
    let mut checks = Vec::new();
    for name in names {
        let mut suite = Suite {
            name,
            cfg,
            checks: Vec::new(),
        };
        match name {
            "thm1.1" => thm1_1(&mut suite),
            "thm1.2" => thm1_2(&mut suite),
            "thm1.3" => thm1_3(&mut suite),
            "thm1.4-psu33" => thm1_4(&mut suite),
            _ => appendix1(&mut suite),
        }
        checks.extend(suite.checks);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let text = checks
        .iter()
        .map(|c| format!("{} [{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.name, c.detail))
        .collect();
    let json = json!({
        "selector": selector,
        "seed": cfg.seed,
        "passed": checks.len() - failed,
        "failed": failed,
        "checks": checks,
    });
    Ok(Report::new(json, if failed == 0 { EXIT_OK } else { EXIT_FAILS }).with_text(text))
}

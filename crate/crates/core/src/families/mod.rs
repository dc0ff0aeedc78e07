//! Constructors for the graph families, each with a deterministic vertex order.

mod alternating;
mod classical;
mod sporadic;
mod unitary;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formspace::FormType;
use crate::graph::Graph;

pub use alternating::{bisection_graph, kneser_pairs, nonsingular_o8_plus_2};
pub use classical::{
    affine_polar, bilinear_forms_graph, complete_multipartite, disjoint_cliques, elliptic_orthogonal, hamming,
    johnson, paley, paley_fourth_power_group, polar_graph, schlafli,
};
pub use sporadic::{
    gewirtz, golay_code, golay_octads, higman_sims, mclaughlin, mclaughlin_second_subconstituent, steiner_s3_6_22,
    SteinerSystem,
};
pub use unitary::{unitary36, Unitary36, UNITARY36_SEED};

/// Name, parameters and a one-line description of a constructed graph.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub family: String,
    pub parameters: BTreeMap<String, String>,
    pub vertices: usize,
    pub description: String,
}

/// A family member as named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Petersen,
    Paley(u64),
    Multipartite { parts: usize, size: usize },
    Cliques { count: usize, size: usize },
    Hamming(usize),
    AffinePolar { m: usize, q: u64, eps: FormType },
    Elliptic(u64),
    Schlafli,
    Bilinear { q: u64, m: usize },
    Johnson(usize),
    HigmanSims,
    McLaughlin,
    McLaughlinFar,
    Gewirtz,
    Unitary { valency: usize },
    Polar { m: usize, q: u64, eps: FormType },
    Kneser(usize),
    Bisection(usize),
    NonsingularO8Plus2,
}

fn arg<T: std::str::FromStr>(args: &[String], i: usize, what: &str) -> Result<T> {
    args.get(i)
        .ok_or_else(|| Error::InvalidParameter(format!("missing parameter {what}")))?
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad value for {what}: {:?}", args[i])))
}

impl Family {
    /// Names accepted by [`Family::parse`], with their parameters.
    pub const USAGE: &'static [&'static str] = &[
        "cycle n",
        "petersen",
        "paley q",
        "multipartite parts size",
        "cliques count size",
        "hamming n",
        "vo m q +|-",
        "elliptic q",
        "schlafli",
        "bilinear q m",
        "johnson n",
        "hs",
        "mcl",
        "mcl162",
        "gewirtz",
        "unitary 14|21",
        "polar m q +|-|o",
        "kneser n",
        "bisection n",
        "o8plus2",
    ];

    pub fn parse(name: &str, args: &[String]) -> Result<Family> {
        let expect = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} takes {k} parameter(s), got {}",
                    args.len()
                )))
            }
        };
        let fam = match name {
            "cycle" => {
                expect(1)?;
                Family::Cycle(arg(args, 0, "n")?)
            }
            "petersen" => {
                expect(0)?;
                Family::Petersen
            }
            "paley" => {
                expect(1)?;
                Family::Paley(arg(args, 0, "q")?)
            }
            "multipartite" => {
                expect(2)?;
                Family::Multipartite {
                    parts: arg(args, 0, "parts")?,
                    size: arg(args, 1, "size")?,
                }
            }
            "cliques" => {
                expect(2)?;
                Family::Cliques {
                    count: arg(args, 0, "count")?,
                    size: arg(args, 1, "size")?,
                }
            }
            "hamming" => {
                expect(1)?;
                Family::Hamming(arg(args, 0, "n")?)
            }
            "vo" => {
                expect(3)?;
                let eps = FormType::parse(&args[2])?;
                if eps == FormType::Odd {
                    return Err(Error::InvalidParameter("vo needs + or -".into()));
                }
                Family::AffinePolar {
                    m: arg(args, 0, "m")?,
                    q: arg(args, 1, "q")?,
                    eps,
                }
            }
            "elliptic" => {
                expect(1)?;
                Family::Elliptic(arg(args, 0, "q")?)
            }
            "schlafli" => {
                expect(0)?;
                Family::Schlafli
            }
            "bilinear" => {
                expect(2)?;
                Family::Bilinear {
                    q: arg(args, 0, "q")?,
                    m: arg(args, 1, "m")?,
                }
            }
            "johnson" => {
                expect(1)?;
                Family::Johnson(arg(args, 0, "n")?)
            }
            "hs" | "higman-sims" => {
                expect(0)?;
                Family::HigmanSims
            }
            "mcl" | "mclaughlin" => {
                expect(0)?;
                Family::McLaughlin
            }
            "mcl162" => {
                expect(0)?;
                Family::McLaughlinFar
            }
            "gewirtz" => {
                expect(0)?;
                Family::Gewirtz
            }
            "unitary" => {
                expect(1)?;
                let valency = arg(args, 0, "valency")?;
                if valency != 14 && valency != 21 {
                    return Err(Error::InvalidParameter("unitary valency is 14 or 21".into()));
                }
                Family::Unitary { valency }
            }
            "polar" => {
                expect(3)?;
                Family::Polar {
                    m: arg(args, 0, "m")?,
                    q: arg(args, 1, "q")?,
                    eps: FormType::parse(&args[2])?,
                }
            }
            "kneser" => {
                expect(1)?;
                Family::Kneser(arg(args, 0, "n")?)
            }
            "bisection" => {
                expect(1)?;
                Family::Bisection(arg(args, 0, "n")?)
            }
            "o8plus2" => {
                expect(0)?;
                Family::NonsingularO8Plus2
            }
            other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        };
        Ok(fam)
    }

    fn name_and_params(&self) -> (&'static str, Vec<(&'static str, String)>, String) {
        match *self {
            Family::Cycle(n) => ("cycle", vec![("n", n.to_string())], format!("the {n}-cycle")),
            Family::Petersen => ("petersen", vec![], "Petersen graph, Kneser graph K(5,2)".into()),
            Family::Paley(q) => (
                "paley",
                vec![("q", q.to_string())],
                "elements of GF(q), adjacent when the difference is a nonzero square".into(),
            ),
            Family::Multipartite { parts, size } => (
                "multipartite",
                vec![("parts", parts.to_string()), ("size", size.to_string())],
                "complete multipartite graph with equal parts".into(),
            ),
            Family::Cliques { count, size } => (
                "cliques",
                vec![("count", count.to_string()), ("size", size.to_string())],
                "disjoint union of complete graphs".into(),
            ),
            Family::Hamming(n) => (
                "hamming",
                vec![("n", n.to_string())],
                "Cartesian product K_n x K_n".into(),
            ),
            Family::AffinePolar { m, q, eps } => (
                "vo",
                vec![
                    ("m", m.to_string()),
                    ("q", q.to_string()),
                    ("eps", eps.symbol().into()),
                ],
                "vectors of GF(q)^(2m), adjacent when the difference is singular".into(),
            ),
            Family::Elliptic(q) => (
                "elliptic",
                vec![("q", q.to_string())],
                "singular points of the minus-type form on GF(q)^6, adjacent when perpendicular".into(),
            ),
            Family::Schlafli => (
                "schlafli",
                vec![],
                "complement of the elliptic orthogonal graph over GF(2)".into(),
            ),
            Family::Bilinear { q, m } => (
                "bilinear",
                vec![("q", q.to_string()), ("m", m.to_string())],
                "2 x m matrices over GF(q), adjacent when the difference has rank 1".into(),
            ),
            Family::Johnson(n) => (
                "johnson",
                vec![("n", n.to_string())],
                "2-subsets of an n-set, adjacent when they meet in one point".into(),
            ),
            Family::HigmanSims => (
                "hs",
                vec![],
                "Higman-Sims graph from the Steiner system S(3,6,22)".into(),
            ),
            Family::McLaughlin => (
                "mcl",
                vec![],
                "McLaughlin graph from the octads of the extended binary Golay code".into(),
            ),
            Family::McLaughlinFar => (
                "mcl162",
                vec![],
                "McLaughlin graph restricted to the non-neighbours of one vertex".into(),
            ),
            Family::Gewirtz => (
                "gewirtz",
                vec![],
                "blocks of S(3,6,22) missing a point, adjacent when disjoint".into(),
            ),
            Family::Unitary { valency } => (
                "unitary",
                vec![("valency", valency.to_string())],
                "orbital graph of PSU(3,3) on the 36 cosets of PSL(2,7)".into(),
            ),
            Family::Polar { m, q, eps } => (
                "polar",
                vec![("m", m.to_string()), ("q", q.to_string()), ("eps", eps.symbol().into())],
                "singular points of a quadratic form, adjacent when perpendicular".into(),
            ),
            Family::Kneser(n) => (
                "kneser",
                vec![("n", n.to_string())],
                "2-subsets of an n-set, adjacent when disjoint".into(),
            ),
            Family::Bisection(n) => (
                "bisection",
                vec![("n", n.to_string())],
                "splittings of an n-set into halves, adjacent when halves meet in one point".into(),
            ),
            Family::NonsingularO8Plus2 => (
                "o8plus2",
                vec![],
                "nonsingular vectors of the plus-type form on GF(2)^8, adjacent when not perpendicular".into(),
            ),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        match *self {
            Family::Cycle(n) if n >= 3 => Ok(Graph::cycle(n)),
            Family::Cycle(_) => Err(Error::InvalidParameter("cycle needs n >= 3".into())),
            Family::Petersen => Ok(Graph::petersen()),
            Family::Paley(q) => paley(q),
            Family::Multipartite { parts, size } => complete_multipartite(parts, size),
            Family::Cliques { count, size } => disjoint_cliques(count, size),
            Family::Hamming(n) => hamming(n),
            Family::AffinePolar { m, q, eps } => affine_polar(m, q, eps),
            Family::Elliptic(q) => elliptic_orthogonal(q),
            Family::Schlafli => schlafli(),
            Family::Bilinear { q, m } => bilinear_forms_graph(q, m),
            Family::Johnson(n) => johnson(n),
            Family::HigmanSims => higman_sims(),
            Family::McLaughlin => mclaughlin(),
            Family::McLaughlinFar => mclaughlin_second_subconstituent(),
            Family::Gewirtz => gewirtz(),
            Family::Unitary { valency } => {
                let u = unitary36(UNITARY36_SEED)?;
                Ok(if valency == 14 { u.valency14 } else { u.valency21 })
            }
            Family::Polar { m, q, eps } => polar_graph(m, q, eps),
            Family::Kneser(n) => kneser_pairs(n),
            Family::Bisection(n) => bisection_graph(n),
            Family::NonsingularO8Plus2 => nonsingular_o8_plus_2(),
        }
    }

    pub fn descriptor(&self, g: &Graph) -> FamilyDescriptor {
        let (name, params, description) = self.name_and_params();
        FamilyDescriptor {
            family: name.into(),
            parameters: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            vertices: g.order(),
            description,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{automorphism_group, SearchOptions};
    use crate::permgrp::orbital_report;
    use num_bigint::BigUint;

    fn strings(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_build() {
        let f = Family::parse("vo", &strings(&["3", "2", "-"])).unwrap();
        assert_eq!(
            f,
            Family::AffinePolar {
                m: 3,
                q: 2,
                eps: FormType::Minus
            }
        );
        let g = f.build().unwrap();
        assert_eq!(g.order(), 64);
        let d = f.descriptor(&g);
        assert_eq!(d.parameters["eps"], "-");
        assert!(Family::parse("paley", &[]).is_err());
        assert!(Family::parse("paley", &strings(&["x"])).is_err());
        assert!(Family::parse("nope", &[]).is_err());
        assert!(Family::parse("unitary", &strings(&["7"])).is_err());
        assert!(Family::Paley(7).build().is_err());
    }

    fn certified_aut(g: &Graph) -> crate::graph::AutResult {
        let r = automorphism_group(g, &SearchOptions::default()).unwrap();
        assert!(r.certified);
        for gen in r.group.generators() {
            assert!(g.is_automorphism(gen));
        }
        r
    }

    #[test]
    fn paley_13() {
        let r = certified_aut(&paley(13).unwrap());
        assert_eq!(r.group.order(), BigUint::from(78u32));
    }

    #[test]
    fn schlafli_rank_3() {
        let r = certified_aut(&schlafli().unwrap());
        assert_eq!(r.group.order(), BigUint::from(51840u32));
        assert_eq!(orbital_report(&r.group).unwrap().rank, 3);
        assert_eq!(certified_aut(&elliptic_orthogonal(2).unwrap()).group.order(), BigUint::from(51840u32));
    }

    #[test]
    fn unitary_graphs() {
        let u = unitary36(UNITARY36_SEED).unwrap();
        for g in [&u.valency14, &u.valency21] {
            let r = certified_aut(g);
            assert_eq!(r.group.order(), BigUint::from(12096u32));
            assert!(r.group.contains_group(&u.group));
            assert_eq!(orbital_report(&r.group).unwrap().subdegrees, vec![1, 14, 21]);
        }
    }

    #[test]
    fn higman_sims_group() {
        let r = certified_aut(&higman_sims().unwrap());
        assert_eq!(r.group.order(), BigUint::from(88_704_000u64));
        assert_eq!(orbital_report(&r.group).unwrap().subdegrees, vec![1, 22, 77]);
    }

    #[test]
    fn mclaughlin_group() {
        let r = certified_aut(&mclaughlin().unwrap());
        assert_eq!(r.group.order(), BigUint::from(1_796_256_000u64));
        assert_eq!(orbital_report(&r.group).unwrap().subdegrees, vec![1, 112, 162]);
        let r = certified_aut(&mclaughlin_second_subconstituent().unwrap());
        assert_eq!(r.group.order(), BigUint::from(13_063_680u64));
    }
}

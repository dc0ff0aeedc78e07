//! Higman-Sims, McLaughlin and Gewirtz graphs from Steiner systems.

use crate::error::{Error, Result};
use crate::formspace::{field_of_order, matrix_group_on_points, projective_points, Matrix};
use crate::graph::Graph;
use crate::permgrp::{orbit, OrbitSeed};

/// Generator matrix of the extended binary Golay code, one row per word, bit
/// `i` = coordinate `i`.
const GOLAY_BASIS: [u32; 12] = [
    0xff, 0xf0f, 0x3333, 0x5555, 0x9669, 0x30356, 0x50563, 0x9063a, 0x111178, 0x21121d, 0x41144e, 0x811724,
];

/// All 4096 codewords, sorted.
pub fn golay_code() -> Vec<u32> {
    let mut words: Vec<u32> = (0u32..1 << 12)
        .map(|c| {
            (0..12)
                .filter(|i| c >> i & 1 == 1)
                .fold(0, |acc, i| acc ^ GOLAY_BASIS[i])
        })
        .collect();
    words.sort_unstable();
    words
}

/// The 759 weight-8 codewords, sorted.
pub fn golay_octads() -> Vec<u32> {
    golay_code().into_iter().filter(|w| w.count_ones() == 8).collect()
}

/// Blocks on `0..points`.
#[derive(Clone, Debug)]
pub struct SteinerSystem {
    pub points: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl SteinerSystem {
    /// True when every `t`-subset of points lies in exactly one block.
    pub fn is_steiner(&self, t: usize) -> bool {
        let mut count = std::collections::HashMap::<Vec<usize>, usize>::new();
        fn subsets(b: &[usize], t: usize, start: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
            if cur.len() == t {
                out(cur);
                return;
            }
            for i in start..b.len() {
                cur.push(b[i]);
                subsets(b, t, i + 1, cur, out);
                cur.pop();
            }
        }
        for b in &self.blocks {
            subsets(b, t, 0, &mut Vec::new(), &mut |s| *count.entry(s.to_vec()).or_insert(0) += 1);
        }
        let total = (0..t).fold(1usize, |acc, i| acc * (self.points - i) / (i + 1));
        count.len() == total && count.values().all(|&c| c == 1)
    }
}

/// `S(3,6,22)` from PG(2,4): the 21 lines extended by the point `21`, plus one
/// PSL(3,4)-orbit of 56 hyperovals (the orbit of the lex-smallest hyperoval).
pub fn steiner_s3_6_22() -> Result<SteinerSystem> {
    let f = field_of_order(4)?;
    let points = projective_points(&f, 3);
    let n = points.len();
    let dot = |a: &[u32], b: &[u32]| a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
    let lines: Vec<Vec<usize>> = points
        .iter()
        .map(|l| (0..n).filter(|&x| dot(l, &points[x]) == 0).collect())
        .collect();
    let mut line_of = vec![vec![usize::MAX; n]; n];
    for (i, l) in lines.iter().enumerate() {
        for &a in l {
            for &b in l {
                line_of[a][b] = i;
            }
        }
    }

    // lex-first set of six points, no three collinear
    fn extend(line_of: &[Vec<usize>], set: &mut Vec<usize>, used: u32, n: usize) -> bool {
        if set.len() == 6 {
            return true;
        }
        let start = set.last().map_or(0, |&x| x + 1);
        for c in start..n {
            let mut mask = 0u32;
            if set.iter().all(|&x| {
                let bit = 1 << line_of[c][x];
                mask |= bit;
                used & bit == 0
            }) {
                set.push(c);
                if extend(line_of, set, used | mask, n) {
                    return true;
                }
                set.pop();
            }
        }
        false
    }
    let mut first = Vec::new();
    if !extend(&line_of, &mut first, 0, n) {
        return Err(Error::Construction("PG(2,4) has no hyperoval".into()));
    }

    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                for a in [1u32, 2] {
                    let mut e = Matrix::identity(&f, 3).entries().to_vec();
                    e[i * 3 + j] = a;
                    gens.push(Matrix::new(&f, 3, 3, e)?);
                }
            }
        }
    }
    let psl = matrix_group_on_points(&points, &gens)?;
    let ovals = orbit(&psl, &OrbitSeed::subset(&first), 1000)?;
    if ovals.len() != 56 {
        return Err(Error::Construction(format!("hyperoval orbit has {} members", ovals.len())));
    }
    let mut blocks: Vec<Vec<usize>> = lines
        .into_iter()
        .map(|mut l| {
            l.push(n);
            l
        })
        .collect();
    blocks.extend(ovals);
    let design = SteinerSystem { points: n + 1, blocks };
    if design.blocks.len() != 77 || !design.is_steiner(3) {
        return Err(Error::Construction("extended plane is not S(3,6,22)".into()));
    }
    Ok(design)
}

/// Higman-Sims graph: vertex 0, the 22 points (1..=22) and the 77 blocks of
/// `S(3,6,22)`; 0 is adjacent to the points, a point to the blocks through
/// it, and two blocks when disjoint.
pub fn higman_sims() -> Result<Graph> {
    let s = steiner_s3_6_22()?;
    let p = s.points;
    let mut g = Graph::empty(1 + p + s.blocks.len());
    for x in 0..p {
        g.add_edge(0, 1 + x);
    }
    for (i, b) in s.blocks.iter().enumerate() {
        for &x in b {
            g.add_edge(1 + x, 1 + p + i);
        }
        for (j, c) in s.blocks.iter().enumerate().skip(i + 1) {
            if b.iter().all(|x| !c.contains(x)) {
                g.add_edge(1 + p + i, 1 + p + j);
            }
        }
    }
    let mut labels = vec!["*".to_string()];
    labels.extend((0..p).map(|x| format!("p{x}")));
    labels.extend(s.blocks.iter().map(|b| format!("{b:?}")));
    g.with_labels(labels)
}

/// Gewirtz graph: the 56 blocks of `S(3,6,22)` missing point 21, adjacent when disjoint.
pub fn gewirtz() -> Result<Graph> {
    let s = steiner_s3_6_22()?;
    let blocks: Vec<&Vec<usize>> = s.blocks.iter().filter(|b| !b.contains(&21)).collect();
    let g = Graph::from_fn(blocks.len(), |x, y| blocks[x].iter().all(|a| !blocks[y].contains(a)));
    g.with_labels(blocks.iter().map(|b| format!("{b:?}")).collect())
}

/// McLaughlin graph on the 22 points other than 22, 23, the 77 octads through
/// both (as 6-sets) and the 176 octads through 22 but not 23 (as 7-sets).
///
/// Points are never adjacent; a point is adjacent to the 6-sets missing it and
/// the 7-sets containing it; two 6-sets when disjoint, a 6-set and a 7-set
/// when they share 3 points, two 7-sets when they share 1 point.
pub fn mclaughlin() -> Result<Graph> {
    let octads = golay_octads();
    if octads.len() != 759 {
        return Err(Error::Construction(format!("{} octads", octads.len())));
    }
    let (a, b) = (1u32 << 22, 1u32 << 23);
    let rest = !(a | b);
    let pairs: Vec<u32> = octads.iter().filter(|&&o| o & a != 0 && o & b != 0).map(|o| o & rest).collect();
    let singles: Vec<u32> = octads.iter().filter(|&&o| o & a != 0 && o & b == 0).map(|o| o & rest).collect();
    if pairs.len() != 77 || singles.len() != 176 {
        return Err(Error::Construction(format!(
            "octad split {}/{} instead of 77/176",
            pairs.len(),
            singles.len()
        )));
    }
    enum V {
        Point(u32),
        Six(u32),
        Seven(u32),
    }
    let verts: Vec<V> = (0..22)
        .map(|x| V::Point(1 << x))
        .chain(pairs.iter().map(|&s| V::Six(s)))
        .chain(singles.iter().map(|&s| V::Seven(s)))
        .collect();
    let meet = |x: u32, y: u32| (x & y).count_ones();
    let g = Graph::from_fn(verts.len(), |x, y| match (&verts[x], &verts[y]) {
        (V::Point(_), V::Point(_)) => false,
        (V::Point(p), V::Six(s)) | (V::Six(s), V::Point(p)) => p & s == 0,
        (V::Point(p), V::Seven(s)) | (V::Seven(s), V::Point(p)) => p & s != 0,
        (V::Six(s), V::Six(t)) => meet(*s, *t) == 0,
        (V::Six(s), V::Seven(t)) | (V::Seven(t), V::Six(s)) => meet(*s, *t) == 3,
        (V::Seven(s), V::Seven(t)) => meet(*s, *t) == 1,
    });
    let set = |m: u32| -> String {
        let xs: Vec<String> = (0..24).filter(|i| m >> i & 1 == 1).map(|i: u32| i.to_string()).collect();
        format!("{{{}}}", xs.join(","))
    };
    let labels = verts
        .iter()
        .map(|v| match v {
            V::Point(p) => format!("p{}", p.trailing_zeros()),
            V::Six(s) | V::Seven(s) => set(*s),
        })
        .collect();
    g.with_labels(labels)
}

/// The graph induced by the McLaughlin graph on the 162 vertices not adjacent
/// to the point vertex `p0`.
pub fn mclaughlin_second_subconstituent() -> Result<Graph> {
    let g = mclaughlin()?;
    let far: Vec<usize> = (1..g.order()).filter(|&x| !g.has_edge(0, x)).collect();
    g.induced_subgraph(&far)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SrgParams;

    #[test]
    fn golay_weight_enumerator() {
        let mut dist = [0usize; 25];
        for w in golay_code() {
            dist[w.count_ones() as usize] += 1;
        }
        assert_eq!((dist[0], dist[8], dist[12], dist[16], dist[24]), (1, 759, 2576, 759, 1));
        assert_eq!(dist.iter().sum::<usize>(), 4096);
    }

    #[test]
    fn octads_form_s5_8_24() {
        let blocks = golay_octads()
            .into_iter()
            .map(|o| (0..24).filter(|i| o >> i & 1 == 1).collect())
            .collect();
        assert!(SteinerSystem { points: 24, blocks }.is_steiner(5));
    }

    #[test]
    fn steiner_22() {
        let s = steiner_s3_6_22().unwrap();
        assert_eq!(s.blocks.len(), 77);
        assert!(s.blocks.iter().all(|b| b.len() == 6));
    }

    #[test]
    fn sporadic_parameters() {
        let hs = higman_sims().unwrap();
        assert_eq!(hs.srg_params().unwrap(), SrgParams::new(100, 22, 0, 6));
        assert!(!hs.has_triangle());
        assert_eq!(gewirtz().unwrap().srg_params().unwrap(), SrgParams::new(56, 10, 0, 2));
        assert_eq!(mclaughlin().unwrap().srg_params().unwrap(), SrgParams::new(275, 112, 30, 56));
    }

    #[test]
    fn constructions_are_deterministic() {
        assert!(mclaughlin().unwrap().same_edges(&mclaughlin().unwrap()));
        let far = mclaughlin_second_subconstituent().unwrap();
        assert_eq!(far.srg_params().unwrap(), SrgParams::new(162, 56, 10, 24));
        assert!(higman_sims().unwrap().same_edges(&higman_sims().unwrap()));
    }
}

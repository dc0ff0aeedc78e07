//! Base and strong generating set via the deterministic Schreier-Sims algorithm.

use num_bigint::BigUint;

use super::perm::Permutation;

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
pub struct Level {
    pub base_point: usize,
    /// Strong generators fixing every earlier base point.
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(n: usize, base_point: usize, gens: Vec<Permutation>) -> Self {
        let mut level = Level {
            base_point,
            gens,
            orbit: Vec::new(),
            transversal: vec![None; n],
        };
        level.rebuild_orbit();
        level
    }

    fn rebuild_orbit(&mut self) {
        let n = self.transversal.len();
        self.transversal = vec![None; n];
        self.transversal[self.base_point] = Some(Permutation::identity(n));
        self.orbit = vec![self.base_point];
        let mut head = 0;
        while head < self.orbit.len() {
            let b = self.orbit[head];
            head += 1;
            for g in &self.gens {
                let c = g.image(b);
                if self.transversal[c].is_none() {
                    let u = self.transversal[b].as_ref().unwrap().then(g);
                    self.transversal[c] = Some(u);
                    self.orbit.push(c);
                }
            }
        }
    }

    pub fn transversal(&self, b: usize) -> Option<&Permutation> {
        self.transversal[b].as_ref()
    }

    pub fn contains(&self, b: usize) -> bool {
        self.transversal[b].is_some()
    }
}

/// A stabilizer chain certifying the order of the generated group.
#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    /// Runs Schreier-Sims. The base starts with `prefix` and is extended by the
    /// smallest point moved by a generator that fixes the current base.
    pub fn build(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Bsgs {
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut base: Vec<usize> = prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved_point().unwrap());
            }
        }
        let mut levels: Vec<Level> = base
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let lg = gens
                    .iter()
                    .filter(|g| base[..i].iter().all(|&x| g.image(x) == x))
                    .cloned()
                    .collect();
                Level::new(degree, b, lg)
            })
            .collect();
        let mut chain = Bsgs {
            degree,
            levels: Vec::new(),
        };

        let mut i = levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            let mut jumped = None;
            'scan: for oi in 0..levels[iu].orbit.len() {
                let b = levels[iu].orbit[oi];
                for si in 0..levels[iu].gens.len() {
                    let s = &levels[iu].gens[si];
                    let bs = s.image(b);
                    let ub = levels[iu].transversal[b].as_ref().unwrap();
                    let ubs = levels[iu].transversal[bs].as_ref().unwrap();
                    let h = ub.then(s).then(&ubs.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let (res, j) = strip_levels(&levels, &h, iu + 1);
                    if !res.is_identity() {
                        if j == levels.len() {
                            let pt = res.first_moved_point().unwrap();
                            levels.push(Level::new(degree, pt, Vec::new()));
                        }
                        for level in levels.iter_mut().take(j + 1).skip(iu + 1) {
                            level.gens.push(res.clone());
                            level.rebuild_orbit();
                        }
                        jumped = Some(j);
                        break 'scan;
                    }
                }
            }
            match jumped {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        // drop trailing levels with trivial orbits (can arise from a prefix)
        chain.levels = levels;
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Sifts `g` through the chain; returns the residue and the level where it stopped.
    pub fn strip(&self, g: &Permutation) -> (Permutation, usize) {
        strip_levels(&self.levels, g, 0)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.strip(g).0.is_identity()
    }

    /// Generators of the pointwise stabilizer of the first `k` base points.
    pub fn stabilizer_gens(&self, k: usize) -> Vec<Permutation> {
        self.levels.get(k).map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// All strong generators (the level-0 generating set).
    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.stabilizer_gens(0)
    }
}

fn strip_levels(levels: &[Level], g: &Permutation, from: usize) -> (Permutation, usize) {
    let mut h = g.clone();
    for (l, level) in levels.iter().enumerate().skip(from) {
        let b = h.image(level.base_point);
        match &level.transversal[b] {
            None => return (h, l),
            Some(u) => h = h.then(&u.inverse()),
        }
    }
    (h, levels.len())
}

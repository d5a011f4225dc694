//! Deterministic Schreier–Sims with explicit transversals.

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    /// Strong generators fixing every earlier base point.
    pub gens: Vec<Permutation>,
    /// Orbit of `base` under `gens`, in discovery order.
    pub orbit: Vec<usize>,
    /// `transversal[x]` maps `base` to `x`; `None` off the orbit.
    pub transversal: Vec<Option<Permutation>>,
    /// Position of each point in `orbit`.
    pub position: Vec<Option<usize>>,
    /// Cached inverses of the transversal elements.
    pub inverse: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, gens: Vec<Permutation>, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens,
            orbit: Vec::new(),
            transversal: vec![None; degree],
            position: vec![None; degree],
            inverse: vec![None; degree],
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.position = vec![None; degree];
        self.inverse = vec![None; degree];
        self.orbit.clear();
        self.orbit.push(self.base);
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.position[self.base] = Some(0);
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for s in &self.gens {
                let y = s.image(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().expect("on orbit") * s;
                    self.transversal[y] = Some(u);
                    self.position[y] = Some(self.orbit.len());
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
        for &x in &self.orbit {
            self.inverse[x] = self.transversal[x].as_ref().map(Permutation::inverse);
        }
    }
}

/// Base and strong generating set.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut base: Vec<usize> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved().expect("not the identity"));
            }
        }
        let levels = base
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let level_gens = gens
                    .iter()
                    .filter(|g| base[..i].iter().all(|&c| g.image(c) == c))
                    .cloned()
                    .collect();
                Level::new(b, level_gens, degree)
            })
            .collect();
        let mut chain = StabChain { degree, levels };
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            let orbit = self.levels[li].orbit.clone();
            let gens = self.levels[li].gens.clone();
            for &x in &orbit {
                for s in &gens {
                    let y = s.image(x);
                    let ux = self.levels[li].transversal[x].as_ref().expect("on orbit");
                    let uxs = ux * s;
                    if Some(&uxs) == self.levels[li].transversal[y].as_ref() {
                        continue;
                    }
                    let schreier = &uxs * self.levels[li].inverse[y].as_ref().expect("on orbit");
                    let (h, j) = self.strip_from(schreier, li + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        if j == self.levels.len() {
                            let b = h.first_moved().expect("not the identity");
                            self.levels.push(Level::new(b, Vec::new(), self.degree));
                        }
                        for l in li + 1..=j {
                            self.levels[l].gens.push(h.clone());
                            self.levels[l].rebuild(self.degree);
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Sifts `g` through levels `start..`; returns the residue and the level
    /// where sifting stopped (`levels.len()` if it passed all of them).
    pub fn strip_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.image(level.base);
            match &level.inverse[beta] {
                None => return (g, l),
                Some(inv) => g = &g * inv,
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip_from(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Mixed-radix index of a member, level 0 least significant; `None` for
    /// non-members. Inverse of [`StabChain::element`].
    pub fn rank(&self, g: &Permutation) -> Option<u128> {
        let mut g = g.clone();
        let mut index = 0u128;
        let mut stride = 1u128;
        for level in &self.levels {
            let beta = g.image(level.base);
            let pos = level.position[beta]?;
            g = &g * level.inverse[beta].as_ref().expect("on orbit");
            index += pos as u128 * stride;
            stride *= level.orbit.len() as u128;
        }
        g.is_identity().then_some(index)
    }

    /// The product `u_{L-1} ⋯ u_0` with level-`i` coset representative chosen
    /// by digit `i` of `index`.
    pub fn element(&self, mut index: u128) -> Permutation {
        let mut digits = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let len = level.orbit.len() as u128;
            digits.push((index % len) as usize);
            index /= len;
        }
        let mut g = Permutation::identity(self.degree);
        for (level, &d) in self.levels.iter().zip(&digits).rev() {
            g = &g
                * level.transversal[level.orbit[d]]
                    .as_ref()
                    .expect("on orbit");
        }
        g
    }
}

/// Every element of a chain in index order (level 0 varies fastest).
pub struct Elements<'a> {
    chain: &'a StabChain,
    digits: Vec<usize>,
    // prefix[i] = u_{L-1} ⋯ u_i for the current digits; prefix[L] = identity.
    prefix: Vec<Permutation>,
    done: bool,
}

impl<'a> Elements<'a> {
    pub(crate) fn new(chain: &'a StabChain) -> Self {
        let depth = chain.levels.len();
        let mut prefix = vec![Permutation::identity(chain.degree); depth + 1];
        for i in (0..depth).rev() {
            let level = &chain.levels[i];
            prefix[i] = &prefix[i + 1] * level.transversal[level.orbit[0]].as_ref().unwrap();
        }
        Elements {
            chain,
            digits: vec![0; depth],
            prefix,
            done: false,
        }
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = self.prefix[0].clone();
        // Advance the odometer.
        let levels = &self.chain.levels;
        let mut i = 0;
        loop {
            if i == levels.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < levels[i].orbit.len() {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        if !self.done {
            for l in (0..=i).rev() {
                let level = &levels[l];
                let u = level.transversal[level.orbit[self.digits[l]]]
                    .as_ref()
                    .unwrap();
                self.prefix[l] = &self.prefix[l + 1] * u;
            }
        }
        Some(out)
    }
}

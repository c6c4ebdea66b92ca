use super::certificate::{Certificate, Outcome};
use super::{
    mixture_order, normalize, Combo, Derivation, KohnConfig, KohnState, Mode, OrderedGenerator, SpecialDomain,
};
use crate::error::{Error, Result};
use crate::groebner::{min_power_in, radical, squarefree_part, Ideal, PowerMembership};
use crate::poly::{check_degree, jacobian_det, linear_combination, Polynomial};
use crate::rational::{rat, Rational};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::OnceLock;

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Generators of `J` grouped by order, with the ideal of each upper set
/// built on demand. Decides the best order an element of `J` is known to have.
pub(crate) struct Filtration<'a> {
    gens: &'a [OrderedGenerator],
    thresholds: Vec<Rational>,
    ideals: Vec<OnceLock<Ideal>>,
    nvars: usize,
    degree_cap: u32,
}

impl<'a> Filtration<'a> {
    pub fn new(gens: &'a [OrderedGenerator], nvars: usize, degree_cap: u32) -> Self {
        let mut thresholds: Vec<Rational> = gens.iter().map(|g| g.order.clone()).collect();
        thresholds.sort_by(|a, b| b.cmp(a));
        thresholds.dedup();
        let ideals = thresholds.iter().map(|_| OnceLock::new()).collect();
        Filtration { gens, thresholds, ideals, nvars, degree_cap }
    }

    fn ideal(&self, i: usize) -> Result<&Ideal> {
        if let Some(ideal) = self.ideals[i].get() {
            return Ok(ideal);
        }
        let tau = &self.thresholds[i];
        let polys = self.gens.iter().filter(|g| &g.order >= tau).map(|g| g.poly.clone()).collect();
        let ideal = Ideal::new(self.nvars, polys)?.with_degree_cap(self.degree_cap);
        Ok(self.ideals[i].get_or_init(|| ideal))
    }

    /// Largest threshold `tau` such that `p` lies in the ideal of generators of
    /// order at least `tau`, with the supporting generator indices.
    pub fn best(&self, p: &Polynomial) -> Result<Option<(Rational, Vec<usize>)>> {
        for (i, tau) in self.thresholds.iter().enumerate() {
            if self.ideal(i)?.contains(p)? {
                let target = normalize(p);
                let exact = self.gens.iter().position(|g| &g.order == tau && g.poly == target);
                let support = match exact {
                    Some(idx) => vec![idx],
                    None => (0..self.gens.len()).filter(|&g| &self.gens[g].order >= tau).collect(),
                };
                return Ok(Some((tau.clone(), support)));
            }
        }
        Ok(None)
    }
}

/// Deduplicates generators up to scalars, keeping the best order witnessed.
struct Collector {
    index: HashMap<Polynomial, usize>,
    gens: Vec<OrderedGenerator>,
}

impl Collector {
    fn new() -> Self {
        Collector { index: HashMap::new(), gens: Vec::new() }
    }

    fn insert(&mut self, poly: Polynomial, order: Rational, derivation: Derivation) {
        let poly = normalize(&poly);
        if poly.is_zero() {
            return;
        }
        match self.index.get(&poly) {
            Some(&i) => {
                if order > self.gens[i].order {
                    self.gens[i].order = order;
                    self.gens[i].derivation = derivation;
                }
            }
            None => {
                self.index.insert(poly.clone(), self.gens.len());
                self.gens.push(OrderedGenerator { poly, order, derivation });
            }
        }
    }

    /// Canonical order: decreasing subellipticity order, then polynomial.
    fn finish(mut self, cap: usize, warnings: &mut Vec<String>, what: &str) -> Vec<OrderedGenerator> {
        self.gens.sort_by(generator_cmp);
        if self.gens.len() > cap {
            warnings.push(format!(
                "{what}: generator cap {cap} exceeded, pruned {} lowest-order generators",
                self.gens.len() - cap
            ));
            self.gens.truncate(cap);
        }
        self.gens
    }
}

fn generator_cmp(a: &OrderedGenerator, b: &OrderedGenerator) -> Ordering {
    b.order.cmp(&a.order).then_with(|| b.poly.canonical_cmp(&a.poly))
}

/// Runs the level-by-level procedure for one domain and configuration.
pub struct Engine<'a> {
    domain: &'a SpecialDomain,
    config: &'a KohnConfig,
}

impl<'a> Engine<'a> {
    pub fn new(domain: &'a SpecialDomain, config: &'a KohnConfig) -> Self {
        Engine { domain, config }
    }

    fn rng(&self, level: u32) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ u64::from(level).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    fn random_combo(rng: &mut ChaCha8Rng, len: usize) -> Combo {
        loop {
            let coeffs: Vec<Rational> =
                (0..len).map(|_| rat(rng.random_range(-9..=9), rng.random_range(1..=4))).collect();
            if coeffs.iter().any(|c| !c.is_zero()) {
                return Combo(coeffs);
            }
        }
    }

    /// `k`-tuples of combinations of the `h_j`: every `k`-subset as unit
    /// vectors, then the seeded random tuples.
    fn h_tuples(&self, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Combo>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let big_n = self.domain.h().len();
        let unit = |j: usize| {
            let mut v = vec![Rational::zero(); big_n];
            v[j] = Rational::one();
            Combo(v)
        };
        let mut tuples: Vec<Vec<Combo>> =
            combinations(big_n, k).into_iter().map(|s| s.into_iter().map(unit).collect()).collect();
        for _ in 0..self.config.random_combos {
            tuples.push((0..k).map(|_| Self::random_combo(rng, big_n)).collect());
        }
        tuples
    }

    pub(crate) fn jacobian(
        domain: &SpecialDomain,
        combos: &[Combo],
        children: &[&Polynomial],
        degree_cap: u32,
    ) -> Result<Polynomial> {
        let mut rows: Vec<Polynomial> = combos.iter().map(|c| linear_combination(&c.0, domain.h())).collect();
        rows.extend(children.iter().map(|p| (*p).clone()));
        let det = jacobian_det(&rows)?;
        check_degree(&det, degree_cap)?;
        Ok(det)
    }

    /// `J_1`: Jacobians of `n`-tuples of combinations of the `h_j`, all of
    /// order `1/8`.
    pub fn build_j1(&self) -> Result<KohnState> {
        let n = self.domain.nvars();
        let mut rng = self.rng(1);
        let mut collector = Collector::new();
        for combos in self.h_tuples(n, &mut rng) {
            let det = Self::jacobian(self.domain, &combos, &[], self.config.degree_cap)?;
            if det.is_zero() {
                continue;
            }
            let derivation = Derivation::JacobianMix { k: n, h_combos: combos, radical_children: Vec::new() };
            collector.insert(det, mixture_order(n, n, &[]), derivation);
        }
        let mut warnings = Vec::new();
        let j = collector.finish(self.config.generator_cap, &mut warnings, "level 1");
        if j.is_empty() {
            warnings.push("level 1: every Jacobian vanishes identically, J_1 = (0)".into());
        }
        Ok(KohnState { level: 1, mode: Mode::FullRadical, j, j_tilde: Vec::new(), warnings })
    }

    /// Fills `J~` from `J` and assigns each element `gamma(f^m) / m`.
    pub fn radical_step(&self, mut state: KohnState) -> Result<KohnState> {
        let n = self.domain.nvars();
        let level = state.level;
        if state.j.is_empty() {
            state.warnings.push(format!("level {level}: J is the zero ideal, J~ is empty"));
            state.j_tilde.clear();
            return Ok(state);
        }
        let cap = self.config.degree_cap;
        let ideal = Ideal::new(n, state.j_polys())?.with_degree_cap(cap);
        let (mode, candidates) = match radical(&ideal) {
            Ok(r) => (Mode::FullRadical, r.generators().to_vec()),
            Err(Error::RadicalUnsupported) => {
                let mut c = Vec::new();
                for g in &state.j {
                    c.push(g.poly.clone());
                    let sqf = squarefree_part(&g.poly, cap)?;
                    if sqf != g.poly {
                        c.push(sqf);
                    }
                }
                (Mode::CertifiedMembers, c)
            }
            Err(e) => return Err(e),
        };
        state.mode = mode;

        let filtration = Filtration::new(&state.j, n, cap);
        let mut collector = Collector::new();
        for f in candidates {
            let f = normalize(&f);
            match min_power_in(&f, &ideal, self.config.m_max)? {
                PowerMembership::Member(m) => {
                    let power = f.pow(m);
                    let Some((source_order, support)) = filtration.best(&power)? else {
                        continue;
                    };
                    let order = &source_order / Rational::from_integer(m.into());
                    collector.insert(f, order, Derivation::RadicalRoot { m, source_order, support });
                }
                PowerMembership::NotInRadical => state
                    .warnings
                    .push(format!("level {level}: candidate {f} failed radical certification")),
                PowerMembership::BoundExceeded => state.warnings.push(format!(
                    "level {level}: no power of {f} up to {} lies in J",
                    self.config.m_max
                )),
            }
        }
        let mut warnings = std::mem::take(&mut state.warnings);
        state.j_tilde = collector.finish(usize::MAX, &mut warnings, "");
        if mode == Mode::CertifiedMembers {
            warnings.push(format!("level {level}: radical unsupported, using certified members"));
        }
        state.warnings = warnings;
        Ok(state)
    }

    /// `J_{nu+1}`: the generators of `J~_nu` plus every mixed Jacobian.
    pub fn advance_level(&self, state: &KohnState) -> Result<KohnState> {
        let n = self.domain.nvars();
        let level = state.level + 1;
        let prev = &state.j_tilde;
        let mut rng = self.rng(level);
        let mut collector = Collector::new();
        for (i, g) in prev.iter().enumerate() {
            collector.insert(g.poly.clone(), g.order.clone(), Derivation::Inherited { child: i });
        }
        for k in (0..=n).rev() {
            let tuples = self.h_tuples(k, &mut rng);
            for children in combinations(prev.len(), n - k) {
                let child_polys: Vec<&Polynomial> = children.iter().map(|&c| &prev[c].poly).collect();
                let child_orders: Vec<Rational> = children.iter().map(|&c| prev[c].order.clone()).collect();
                let order = mixture_order(k, n, &child_orders);
                for combos in &tuples {
                    let det = Self::jacobian(self.domain, combos, &child_polys, self.config.degree_cap)?;
                    if det.is_zero() {
                        continue;
                    }
                    let derivation = Derivation::JacobianMix {
                        k,
                        h_combos: combos.clone(),
                        radical_children: children.clone(),
                    };
                    collector.insert(det, order.clone(), derivation);
                }
            }
        }
        let mut warnings = Vec::new();
        let j = collector.finish(self.config.generator_cap, &mut warnings, &format!("level {level}"));
        Ok(KohnState { level, mode: Mode::FullRadical, j, j_tilde: Vec::new(), warnings })
    }

    pub fn run(&self) -> Result<Certificate> {
        if self.config.max_level == 0 {
            return Err(Error::InvalidArgument("max_level must be at least 1".into()));
        }
        let mut history: Vec<KohnState> = Vec::new();
        for level in 1..=self.config.max_level {
            let state = match history.last() {
                None => self.build_j1()?,
                Some(prev) => self.advance_level(prev)?,
            };
            let state = self.radical_step(state)?;
            let witnesses = state.unit_witnesses();
            history.push(state);
            if let Some(&best) = witnesses.iter().max_by(|&&a, &&b| {
                let s = &history.last().unwrap().j_tilde;
                s[a].order.cmp(&s[b].order).then(b.cmp(&a))
            }) {
                let witness = history.last().unwrap().j_tilde[best].clone();
                let outcome = Outcome::Subelliptic {
                    epsilon: witness.order.clone(),
                    level,
                    witness_index: best,
                    witness,
                };
                return Ok(Certificate::new(self.domain, self.config.clone(), outcome, history));
            }
        }
        let outcome = Outcome::Exhausted { levels_run: self.config.max_level };
        Ok(Certificate::new(self.domain, self.config.clone(), outcome, history))
    }
}

pub fn build_j1(domain: &SpecialDomain, config: &KohnConfig) -> Result<KohnState> {
    Engine::new(domain, config).build_j1()
}

pub fn radical_step(domain: &SpecialDomain, config: &KohnConfig, state: KohnState) -> Result<KohnState> {
    Engine::new(domain, config).radical_step(state)
}

pub fn advance_level(domain: &SpecialDomain, config: &KohnConfig, state: &KohnState) -> Result<KohnState> {
    Engine::new(domain, config).advance_level(state)
}

/// Iterates the levels until some `J~` element is nonzero at the origin or
/// `max_level` is reached.
pub fn run(domain: &SpecialDomain, config: &KohnConfig) -> Result<Certificate> {
    Engine::new(domain, config).run()
}

//! Effectivity of divisor classes on weak del Pezzo surfaces.

use std::collections::HashMap;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::Serialize;

use crate::picard::DivisorClass;
use crate::surface::SurfaceModel;
use crate::{input, invariant, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// D.K > 0 while -K is nef.
    PositiveCanonicalDegree,
    /// D.K = 0: decided by the coordinates in the irreducible (-2)-curves.
    RootSpan,
    /// D meets every negative curve nonnegatively.
    Nef,
}

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub divisor: DivisorClass,
    /// Curves subtracted from `divisor` with their multiplicities.
    pub subtracted: Vec<(DivisorClass, i32)>,
}

#[derive(Clone, Debug, Serialize)]
pub enum Certificate {
    /// Terminal class is nef.
    NefRemainder(DivisorClass),
    /// Terminal class is this nonnegative combination of the irreducible (-2)-curves.
    RootCombination(Vec<i64>),
    /// Terminal class has positive canonical degree.
    PositiveDegree(DivisorClass),
    /// Terminal class has canonical degree 0 but no nonnegative integer root coordinates.
    NotInRootCone(DivisorClass),
}

#[derive(Clone, Debug, Serialize)]
pub struct EffectivityTrace {
    pub input: DivisorClass,
    pub steps: Vec<Step>,
    pub terminal: DivisorClass,
    pub rule: Rule,
    pub certificate: Certificate,
    pub verdict: bool,
}

impl EffectivityTrace {
    /// Replays the subtraction steps and re-checks the terminal certificate.
    pub fn verify(&self, s: &SurfaceModel) -> bool {
        let lat = s.lattice();
        let mut cur = self.input;
        for st in &self.steps {
            if st.divisor != cur {
                return false;
            }
            for (c, m) in &st.subtracted {
                if *m <= 0 || lat.intersect(&cur, c) >= 0 || !s.negative_curves().any(|x| x == c) {
                    return false;
                }
            }
            for (c, m) in &st.subtracted {
                cur -= *m * *c;
            }
        }
        if cur != self.terminal {
            return false;
        }
        match &self.certificate {
            Certificate::NefRemainder(d) => {
                self.verdict
                    && *d == cur
                    && lat.dot_k(d) <= 0
                    && s.negative_curves().all(|c| lat.intersect(d, c) >= 0)
            }
            Certificate::RootCombination(x) => {
                let mut back = lat.zero();
                for (k, r) in x.iter().zip(s.simple_roots()) {
                    back += (*k as i32) * *r;
                }
                self.verdict && back == cur && x.iter().all(|&k| k >= 0)
            }
            Certificate::PositiveDegree(d) => !self.verdict && *d == cur && lat.dot_k(d) > 0,
            Certificate::NotInRootCone(d) => {
                !self.verdict
                    && *d == cur
                    && lat.dot_k(d) == 0
                    && s.root_coordinates(d)
                        .is_none_or(|x| x.iter().any(|&k| k < 0))
            }
        }
    }
}

/// Full effectivity decision with an auditable trace.
pub fn decide(s: &SurfaceModel, d: &DivisorClass) -> Result<EffectivityTrace> {
    let lat = s.lattice();
    if d.rank() != lat.rank() {
        return input("divisor length does not match the lattice");
    }
    let cap = 10 * (lat.rank() as i64 + lat.dot_k(d).abs() as i64);
    let mut cur = *d;
    let mut steps = Vec::new();
    for _ in 0..=cap {
        let dk = lat.dot_k(&cur);
        if dk > 0 {
            return Ok(finish(
                d,
                steps,
                cur,
                Rule::PositiveCanonicalDegree,
                Certificate::PositiveDegree(cur),
                false,
            ));
        }
        if dk == 0 {
            return Ok(match s.root_coordinates(&cur) {
                Some(x) if x.iter().all(|&k| k >= 0) => finish(
                    d,
                    steps,
                    cur,
                    Rule::RootSpan,
                    Certificate::RootCombination(x),
                    true,
                ),
                _ => finish(
                    d,
                    steps,
                    cur,
                    Rule::RootSpan,
                    Certificate::NotInRootCone(cur),
                    false,
                ),
            });
        }
        let mut sub = Vec::new();
        for c in s.negative_curves() {
            let b = -lat.intersect(&cur, c);
            if b > 0 {
                let sq = -lat.square(c);
                sub.push((*c, (b + sq - 1) / sq));
            }
        }
        if sub.is_empty() {
            return Ok(finish(
                d,
                steps,
                cur,
                Rule::Nef,
                Certificate::NefRemainder(cur),
                true,
            ));
        }
        let before = cur;
        for (c, m) in &sub {
            cur -= *m * *c;
        }
        steps.push(Step {
            divisor: before,
            subtracted: sub,
        });
    }
    invariant(format!(
        "effectivity loop exceeded {cap} iterations on {}",
        lat.render(d)
    ))
}

fn finish(
    input: &DivisorClass,
    steps: Vec<Step>,
    terminal: DivisorClass,
    rule: Rule,
    certificate: Certificate,
    verdict: bool,
) -> EffectivityTrace {
    EffectivityTrace {
        input: *input,
        steps,
        terminal,
        rule,
        certificate,
        verdict,
    }
}

/// Same decision as [`decide`] without building a trace.
pub fn is_effective(s: &SurfaceModel, d: &DivisorClass) -> bool {
    let lat = s.lattice();
    let mut cur = *d;
    let cap = 10 * (lat.rank() as i64 + lat.dot_k(d).abs() as i64);
    for _ in 0..=cap {
        let dk = lat.dot_k(&cur);
        if dk > 0 {
            return false;
        }
        if dk == 0 {
            return s
                .root_coordinates(&cur)
                .is_some_and(|x| x.iter().all(|&k| k >= 0));
        }
        let mut next = cur;
        let mut nef = true;
        for c in s.negative_curves() {
            let b = -lat.intersect(&cur, c);
            if b > 0 {
                let sq = -lat.square(c);
                next -= ((b + sq - 1) / sq) * *c;
                nef = false;
            }
        }
        if nef {
            return true;
        }
        cur = next;
    }
    panic!("effectivity loop did not terminate on {}", lat.render(d));
}

/// Decision for anti-classes that are not in the cone of (-1)-classes, working only with
/// products against the irreducible (-2)-curves.
pub fn is_effective_anticlass_fast(s: &SurfaceModel, d: &DivisorClass) -> Result<bool> {
    let lat = s.lattice();
    if lat.dot_k(d) > 0 {
        return input(format!("{} has positive canonical degree", lat.render(d)));
    }
    if lat.square(d) - lat.dot_k(d) != -2 {
        return input(format!("{} is not an anti-class", lat.render(d)));
    }
    let mut prods: Vec<i32> = s
        .simple_roots()
        .iter()
        .map(|r| lat.intersect(d, r))
        .collect();
    Ok(anticlass_products_effective(&mut prods, s.cartan()))
}

/// Core of the anti-class test on the vector of products with the simple roots; the
/// vector is consumed as scratch space.
pub fn anticlass_products_effective(prods: &mut [i32], cartan: &[Vec<i32>]) -> bool {
    let m = prods.len();
    let mut hit = [false; 16];
    loop {
        let mut any_neg = false;
        for j in 0..m {
            if prods[j] <= -2 {
                return true;
            }
            hit[j] = prods[j] == -1;
            any_neg |= hit[j];
        }
        if !any_neg {
            return false;
        }
        for j in 0..m {
            if !hit[j] {
                continue;
            }
            for k in j + 1..m {
                if hit[k] && cartan[j][k] > 0 {
                    return true;
                }
            }
        }
        for j in 0..m {
            if hit[j] {
                for (p, row) in prods.iter_mut().zip(cartan[j].iter()) {
                    *p -= row;
                }
            }
        }
    }
}

/// Membership in the rational cone spanned by all (-1)-classes, by an exact simplex.
pub fn is_absolutely_effective(s: &SurfaceModel, d: &DivisorClass) -> bool {
    let gens: Vec<Vec<i64>> = s
        .minus_one_classes()
        .iter()
        .map(|c| c.coeffs().iter().map(|&x| x as i64).collect())
        .collect();
    let target: Vec<i64> = d.coeffs().iter().map(|&x| x as i64).collect();
    cone_contains(&gens, &target)
}

/// True iff `target` is a nonnegative rational combination of `gens` (phase-one simplex
/// with Bland's rule over exact rationals).
pub fn cone_contains(gens: &[Vec<i64>], target: &[i64]) -> bool {
    let m = target.len();
    let n = gens.len();
    let cols = n + m + 1;
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let flip = if target[i] < 0 { -1 } else { 1 };
            let mut row: Vec<BigRational> = gens.iter().map(|g| q(flip * g[i])).collect();
            row.extend((0..m).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row.push(q(flip * target[i]));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // objective: minimize the sum of artificials, reduced costs kept in `obj`
    let mut obj: Vec<BigRational> = vec![BigRational::zero(); cols];
    for row in &t {
        for c in 0..cols {
            if c < n || c == cols - 1 {
                obj[c] -= &row[c];
            }
        }
    }
    loop {
        let enter = (0..n + m).find(|&c| obj[c].is_negative());
        let Some(e) = enter else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[e].is_positive() {
                let ratio = &row[cols - 1] / &row[e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else { break };
        let p = t[r][e].clone();
        for x in t[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[e].is_zero() {
                let f = row[e].clone();
                for c in 0..cols {
                    row[c] -= &f * &pivot_row[c];
                }
            }
        }
        if !obj[e].is_zero() {
            let f = obj[e].clone();
            for c in 0..cols {
                obj[c] -= &f * &pivot_row[c];
            }
        }
        basis[r] = e;
    }
    obj[cols - 1].is_zero()
}

/// Exhaustive search for a decomposition into irreducible (-1)-curves and -K, each used at
/// most `bound` times, plus a remainder of canonical degree 0 with nonnegative integer
/// coordinates in the irreducible (-2)-curves. `None` when the node budget runs out.
pub fn brute_force_effective(s: &SurfaceModel, d: &DivisorClass, bound: i32) -> Option<bool> {
    let lat = s.lattice();
    let mk = -lat.canonical();
    let mut gens: Vec<DivisorClass> = s.irreducible_minus_one_curves().to_vec();
    gens.push(mk);
    let mut search = Search {
        s,
        gens,
        bound,
        memo: HashMap::new(),
        budget: 2_000_000,
    };
    search.run(*d, 0)
}

struct Search<'a> {
    s: &'a SurfaceModel,
    gens: Vec<DivisorClass>,
    bound: i32,
    memo: HashMap<(DivisorClass, usize), bool>,
    budget: i64,
}

impl Search<'_> {
    fn run(&mut self, rem: DivisorClass, from: usize) -> Option<bool> {
        let lat = self.s.lattice();
        let deg = -lat.dot_k(&rem);
        if deg < 0 {
            return Some(false);
        }
        if deg == 0 {
            return Some(
                self.s
                    .root_coordinates(&rem)
                    .is_some_and(|x| x.iter().all(|&k| k >= 0)),
            );
        }
        if let Some(&v) = self.memo.get(&(rem, from)) {
            return Some(v);
        }
        self.budget -= 1;
        if self.budget < 0 {
            return None;
        }
        // a curve meeting the remainder negatively must occur in every decomposition
        let forced = self
            .s
            .negative_curves()
            .copied()
            .find(|c| lat.intersect(&rem, c) < 0);
        let ans = if let Some(c) = forced {
            if self.gens[..from].contains(&c) {
                false
            } else {
                let next = rem - c;
                let k = self
                    .gens
                    .iter()
                    .position(|g| *g == c)
                    .unwrap_or(from)
                    .min(from);
                self.run(next, k)?
            }
        } else {
            let mut found = false;
            for i in from..self.gens.len() {
                let g = self.gens[i];
                let mut next = rem;
                for _ in 0..self.bound {
                    next -= g;
                    if lat.dot_k(&next) > 0 {
                        break;
                    }
                    if self.run(next, i + 1)? {
                        found = true;
                        break;
                    }
                }
                if found {
                    break;
                }
            }
            found
        };
        self.memo.insert((rem, from), ans);
        Some(ans)
    }
}

/// Not effective, while some multiple k * D with 2 <= k <= max_multiple is.
pub fn is_hole(s: &SurfaceModel, d: &DivisorClass, max_multiple: i32) -> bool {
    !is_effective(s, d) && (2..=max_multiple).any(|k| is_effective(s, &(k * *d)))
}

pub const DEFAULT_HOLE_MULTIPLE: i32 = 6;

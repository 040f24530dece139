//! Weyl groups of blow-ups of the plane: reflections, streaming enumeration of orbits,
//! stabilizers of root sets.
//!
//! Elements are enumerated as a tree: each element `u` is reached from `s_i u` where `i`
//! is the first left descent of `u`. Descents are read off a marker vector `v` with
//! `v.a = -1` for every simple root `a`, carried along as `u(v)`; `s_i u` is longer
//! than `u` exactly when `u(v).a_i < 0`. No visited set is needed.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::picard::{DivisorClass, PicardLattice};
use crate::{input, invariant, Error, Result};

/// Reflection in a (-2)-class: D + (D.R) R.
pub fn reflect(lat: &PicardLattice, root: &DivisorClass, d: &DivisorClass) -> Result<DivisorClass> {
    if lat.classify_r(root) != Some(-2) {
        return input(format!("{} is not a (-2)-class", lat.render(root)));
    }
    Ok(*d + lat.intersect(d, root) * *root)
}

/// Simple roots E_i - E_{i+1} and L - E1 - E2 - E3 of a standard lattice.
pub fn simple_system(lat: &PicardLattice) -> Vec<DivisorClass> {
    if !lat.is_standard() {
        return Vec::new();
    }
    let s = lat.rank() - 1;
    let mut out = Vec::new();
    for i in 1..s {
        out.push(lat.basis(i) - lat.basis(i + 1));
    }
    if s >= 3 {
        out.push(lat.basis(0) - lat.basis(1) - lat.basis(2) - lat.basis(3));
    }
    out
}

/// Vector pairing to -1 with every simple root; its stabilizer is trivial.
pub fn marker(lat: &PicardLattice) -> DivisorClass {
    let s = lat.rank() - 1;
    let mut c = vec![0i32; lat.rank()];
    for i in 1..=s {
        c[i] = (s - i + 1) as i32;
    }
    c[0] = -1 - c[1..=s.min(3)].iter().sum::<i32>();
    DivisorClass::new(&c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylElement {
    pub images: Vec<DivisorClass>,
    pub word: Option<Vec<u8>>,
}

impl WeylElement {
    pub fn identity(lat: &PicardLattice) -> Self {
        WeylElement {
            images: (0..lat.rank()).map(|i| lat.basis(i)).collect(),
            word: Some(Vec::new()),
        }
    }

    pub fn apply(&self, d: &DivisorClass) -> DivisorClass {
        let mut out = DivisorClass::zero(d.rank());
        for (k, img) in d.coeffs().iter().zip(&self.images) {
            if *k != 0 {
                out += *k * *img;
            }
        }
        out
    }

    pub fn preserves_form(&self, lat: &PicardLattice) -> bool {
        let r = lat.rank();
        (0..r).all(|i| {
            (0..r).all(|j| lat.intersect(&self.images[i], &self.images[j]) == lat.gram_entry(i, j))
        })
    }

    pub fn fixes_canonical(&self, lat: &PicardLattice) -> bool {
        self.apply(&lat.canonical()) == lat.canonical()
    }
}

/// Walks the orbit of a tuple of classes under the Weyl group of a standard lattice.
#[derive(Clone, Debug)]
pub struct OrbitWalker {
    lat: PicardLattice,
    simple: Vec<DivisorClass>,
    marker: DivisorClass,
}

/// A tree node: marker image followed by the payload images.
type Node = Vec<DivisorClass>;

impl OrbitWalker {
    pub fn new(lat: &PicardLattice) -> Result<Self> {
        if !lat.is_standard() {
            return input("Weyl enumeration needs a standard lattice");
        }
        Ok(OrbitWalker {
            lat: lat.clone(),
            simple: simple_system(lat),
            marker: marker(lat),
        })
    }

    pub fn for_degree(degree: i32) -> Result<Self> {
        Self::new(&PicardLattice::standard(degree)?)
    }

    pub fn lattice(&self) -> &PicardLattice {
        &self.lat
    }

    pub fn simple_roots(&self) -> &[DivisorClass] {
        &self.simple
    }

    fn first_descent(&self, m: &DivisorClass) -> Option<usize> {
        self.simple
            .iter()
            .position(|a| self.lat.intersect(m, a) > 0)
    }

    fn root_node(&self, payload: &[DivisorClass]) -> Node {
        let mut n = Vec::with_capacity(payload.len() + 1);
        n.push(self.marker);
        n.extend_from_slice(payload);
        n
    }

    /// Children of a node in the canonical tree, in simple-root order.
    fn children(&self, node: &[DivisorClass], mut f: impl FnMut(usize, Node)) {
        for (i, a) in self.simple.iter().enumerate() {
            let p = self.lat.intersect(&node[0], a);
            if p >= 0 {
                continue;
            }
            let m = node[0] + p * *a;
            if self.first_descent(&m) != Some(i) {
                continue;
            }
            let mut child = Vec::with_capacity(node.len());
            child.push(m);
            for x in &node[1..] {
                child.push(*x + self.lat.intersect(x, a) * *a);
            }
            f(i, child);
        }
    }

    /// Nodes of length exactly `depth`, or shorter leaves, in deterministic order.
    fn shards(&self, payload: &[DivisorClass], depth: usize) -> Vec<(Node, usize)> {
        let mut done = Vec::new();
        let mut layer = vec![self.root_node(payload)];
        for _ in 0..depth {
            let mut next = Vec::new();
            for node in layer {
                self.children(&node, |_, c| next.push(c));
                done.push(node);
            }
            layer = next;
        }
        // marker 0: visit only the node; marker 2: full subtree
        let mut out: Vec<(Node, usize)> = done.into_iter().map(|n| (n, 0)).collect();
        out.extend(layer.into_iter().map(|n| (n, 2)));
        out
    }

    fn walk(&self, node: &[DivisorClass], visit: &mut dyn FnMut(&[DivisorClass])) {
        visit(&node[1..]);
        let mut kids = Vec::new();
        self.children(node, |_, c| kids.push(c));
        for k in kids {
            self.walk(&k, visit);
        }
    }

    fn run_shard(&self, shard: &(Node, usize), visit: &mut dyn FnMut(&[DivisorClass])) {
        match shard.1 {
            0 => visit(&shard.0[1..]),
            _ => self.walk(&shard.0, visit),
        }
    }

    /// Visits every image of `payload`, each once, sequentially in tree order.
    pub fn for_each(&self, payload: &[DivisorClass], mut visit: impl FnMut(&[DivisorClass])) {
        self.walk(&self.root_node(payload), &mut visit);
    }

    /// Parallel fold over the orbit; shard results are merged in shard order, so the
    /// result does not depend on the number of workers.
    pub fn fold<T, I, S, M>(
        &self,
        payload: &[DivisorClass],
        shard_depth: usize,
        init: I,
        step: S,
        merge: M,
    ) -> T
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        S: Fn(&mut T, &[DivisorClass]) + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        let shards = self.shards(payload, shard_depth);
        let parts: Vec<T> = shards
            .par_iter()
            .map(|sh| {
                let mut acc = init();
                self.run_shard(sh, &mut |p| step(&mut acc, p));
                acc
            })
            .collect();
        parts.into_iter().fold(init(), &merge)
    }

    pub fn shard_count(&self, payload: &[DivisorClass], shard_depth: usize) -> usize {
        self.shards(payload, shard_depth).len()
    }

    /// Checkpointed fold: processes shards in batches, saving the partial result and the
    /// next shard index to `path` after each batch. Stops early after `max_shards`
    /// shards if given; a later call with the same path resumes.
    #[allow(clippy::too_many_arguments)]
    pub fn fold_checkpointed<T, I, S, M>(
        &self,
        payload: &[DivisorClass],
        shard_depth: usize,
        path: &Path,
        max_shards: Option<usize>,
        init: I,
        step: S,
        merge: M,
    ) -> Result<Progress<T>>
    where
        T: Send + Serialize + DeserializeOwned,
        I: Fn() -> T + Sync + Send,
        S: Fn(&mut T, &[DivisorClass]) + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        let shards = self.shards(payload, shard_depth);
        let fingerprint = fingerprint(&self.lat, payload, shard_depth, shards.len());
        let mut state: Checkpoint<T> = if path.exists() {
            let text = fs::read_to_string(path)?;
            let cp: Checkpoint<T> = serde_json::from_str(&text)
                .map_err(|e| Error::Input(format!("bad checkpoint: {e}")))?;
            if cp.fingerprint != fingerprint {
                return input("checkpoint belongs to a different run");
            }
            cp
        } else {
            Checkpoint {
                fingerprint,
                next_shard: 0,
                total_shards: shards.len(),
                partial: init(),
            }
        };
        let batch = rayon::current_num_threads().max(1) * 4;
        let mut budget = max_shards.unwrap_or(usize::MAX);
        while state.next_shard < shards.len() && budget > 0 {
            let end = (state.next_shard + batch.min(budget)).min(shards.len());
            let parts: Vec<T> = shards[state.next_shard..end]
                .par_iter()
                .map(|sh| {
                    let mut acc = init();
                    self.run_shard(sh, &mut |p| step(&mut acc, p));
                    acc
                })
                .collect();
            let mut partial = std::mem::replace(&mut state.partial, init());
            for p in parts {
                partial = merge(partial, p);
            }
            state.partial = partial;
            budget -= end - state.next_shard;
            state.next_shard = end;
            save_checkpoint(path, &state)?;
        }
        let finished = state.next_shard == shards.len();
        Ok(Progress {
            finished,
            next_shard: state.next_shard,
            total_shards: shards.len(),
            partial: state.partial,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct Checkpoint<T> {
    fingerprint: String,
    next_shard: usize,
    total_shards: usize,
    partial: T,
}

#[derive(Debug)]
pub struct Progress<T> {
    pub finished: bool,
    pub next_shard: usize,
    pub total_shards: usize,
    pub partial: T,
}

fn fingerprint(
    lat: &PicardLattice,
    payload: &[DivisorClass],
    depth: usize,
    shards: usize,
) -> String {
    let p: Vec<String> = payload.iter().map(|d| format!("{d:?}")).collect();
    format!(
        "deg{}:depth{depth}:shards{shards}:{}",
        lat.degree(),
        p.join(";")
    )
}

fn save_checkpoint<T: Serialize>(path: &Path, state: &Checkpoint<T>) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string(state)
        .map_err(|e| Error::Invariant(format!("checkpoint encode: {e}")))?;
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Streams every element of the Weyl group of the given degree as images of the basis.
pub fn enumerate_group(degree: i32, mut visit: impl FnMut(&WeylElement)) -> Result<()> {
    let walker = OrbitWalker::for_degree(degree)?;
    let basis: Vec<DivisorClass> = (0..walker.lat.rank())
        .map(|i| walker.lat.basis(i))
        .collect();
    let mut el = WeylElement {
        images: basis.clone(),
        word: None,
    };
    walker.for_each(&basis, |imgs| {
        el.images.clear();
        el.images.extend_from_slice(imgs);
        visit(&el);
    });
    Ok(())
}

pub fn group_order(degree: i32) -> Result<u64> {
    let walker = OrbitWalker::for_degree(degree)?;
    Ok(walker.fold(&[], 4, || 0u64, |c, _| *c += 1, |a, b| a + b))
}

/// Closed-form orders, for cross-checking the enumeration.
pub fn expected_group_order(degree: i32) -> Option<u64> {
    match degree {
        9 | 8 => Some(1),
        7 => Some(2),
        6 => Some(12),
        5 => Some(120),
        4 => Some(1920),
        3 => Some(51840),
        2 => Some(2903040),
        1 => Some(696729600),
        _ => None,
    }
}

/// Memory budget in bytes for materialized orbits, from `DELPEZZO_MEMORY_BUDGET_MB`.
pub fn memory_budget() -> u64 {
    std::env::var("DELPEZZO_MEMORY_BUDGET_MB")
        .ok()
        .and_then(|v| v.parse::<u64>().ok())
        .unwrap_or(2048)
        << 20
}

/// The whole orbit of a toric system as a vector; refuses when it would not fit the budget.
pub fn orbit_of_toric_system(
    lat: &PicardLattice,
    terms: &[DivisorClass],
) -> Result<Vec<Vec<DivisorClass>>> {
    let degree = lat.degree();
    let order =
        expected_group_order(degree).ok_or_else(|| Error::Input(format!("degree {degree}")))?;
    let bytes = order * (terms.len() as u64 * std::mem::size_of::<DivisorClass>() as u64 + 24);
    if bytes > memory_budget() {
        return Err(Error::Resource(format!(
            "orbit needs about {} MiB; stream it with OrbitWalker::fold or raise DELPEZZO_MEMORY_BUDGET_MB",
            bytes >> 20
        )));
    }
    let walker = OrbitWalker::new(lat)?;
    let mut out = Vec::with_capacity(order as usize);
    walker.for_each(terms, |t| out.push(t.to_vec()));
    if out.len() as u64 != order {
        return invariant(format!(
            "orbit has {} elements, expected {order}",
            out.len()
        ));
    }
    Ok(out)
}

/// Elements fixing a set of (-2)-classes, as images of the basis.
pub fn stabilizer_of_root_set(
    lat: &PicardLattice,
    roots: &[DivisorClass],
) -> Result<Vec<WeylElement>> {
    for r in roots {
        if lat.classify_r(r) != Some(-2) {
            return input(format!("{} is not a (-2)-class", lat.render(r)));
        }
    }
    let walker = OrbitWalker::new(lat)?;
    let rank = lat.rank();
    let mut payload: Vec<DivisorClass> = (0..rank).map(|i| lat.basis(i)).collect();
    payload.extend_from_slice(roots);
    let mut want = roots.to_vec();
    want.sort();
    let found: Vec<Vec<DivisorClass>> = walker.fold(
        &payload,
        4,
        Vec::new,
        |acc, imgs| {
            let mut r = imgs[rank..].to_vec();
            r.sort();
            if r == want {
                acc.push(imgs[..rank].to_vec());
            }
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    Ok(found
        .into_iter()
        .map(|images| WeylElement { images, word: None })
        .collect())
}

pub fn stabilizer_order_of_root_set(degree: i32, roots: &[DivisorClass]) -> Result<u64> {
    let lat = PicardLattice::standard(degree)?;
    Ok(stabilizer_of_root_set(&lat, roots)?.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn reflection_basics() {
        let lat = PicardLattice::standard(5).unwrap();
        let r = lat.parse("E1-E2").unwrap();
        assert_eq!(
            reflect(&lat, &r, &lat.parse("E1").unwrap()).unwrap(),
            lat.parse("E2").unwrap()
        );
        let d = lat.parse("L-E3").unwrap();
        assert_eq!(reflect(&lat, &r, &d).unwrap(), d);
        assert!(reflect(&lat, &lat.parse("E1").unwrap(), &d).is_err());
        let k = lat.canonical();
        for root in lat.enumerate_classes(-2).unwrap() {
            assert_eq!(reflect(&lat, &root, &k).unwrap(), k);
        }
    }

    #[test]
    fn marker_is_antidominant() {
        for deg in 1..=7 {
            let lat = PicardLattice::standard(deg).unwrap();
            let m = marker(&lat);
            for a in simple_system(&lat) {
                assert_eq!(lat.intersect(&m, &a), -1);
            }
        }
    }

    #[test]
    fn orders_small_degrees() {
        for deg in 3..=8 {
            assert_eq!(
                group_order(deg).unwrap(),
                expected_group_order(deg).unwrap(),
                "degree {deg}"
            );
        }
    }

    #[test]
    fn group_elements_are_isometries() {
        let lat = PicardLattice::standard(4).unwrap();
        let mut seen = HashSet::new();
        enumerate_group(4, |w| {
            assert!(w.preserves_form(&lat));
            assert!(w.fixes_canonical(&lat));
            seen.insert(w.images.clone());
        })
        .unwrap();
        assert_eq!(seen.len(), 1920);
    }

    #[test]
    fn orbit_is_free_in_degree5() {
        let lat = PicardLattice::standard(5).unwrap();
        let a: Vec<DivisorClass> = ["L134", "E4", "E1-E4", "L12", "E2", "L23", "E3"]
            .iter()
            .map(|t| lat.parse(t).unwrap())
            .collect();
        let orbit = orbit_of_toric_system(&lat, &a).unwrap();
        let distinct: HashSet<_> = orbit.iter().cloned().collect();
        assert_eq!(distinct.len(), 120);
    }

    #[test]
    fn fold_is_independent_of_shard_depth() {
        let w = OrbitWalker::for_degree(4).unwrap();
        let payload = [w.lattice().parse("E1").unwrap()];
        let sum = |depth| {
            w.fold(
                &payload,
                depth,
                || 0i64,
                |acc, p| *acc += p[0].coeffs()[0] as i64 * 7 + p[0].coeffs()[1] as i64,
                |a, b| a + b,
            )
        };
        let base = sum(0);
        for d in [1, 3, 6, 40] {
            assert_eq!(sum(d), base);
        }
    }

    #[test]
    fn stabilizer_of_empty_set_is_whole_group() {
        assert_eq!(stabilizer_order_of_root_set(6, &[]).unwrap(), 12);
    }

    #[test]
    fn checkpoint_resume_matches_uninterrupted() {
        let w = OrbitWalker::for_degree(3).unwrap();
        let payload = [w.lattice().parse("E1").unwrap()];
        let step = |acc: &mut Vec<u64>, p: &[DivisorClass]| {
            acc[0] += 1;
            acc[1] = acc[1].wrapping_add((p[0].pack() as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        };
        let merge = |a: Vec<u64>, b: Vec<u64>| vec![a[0] + b[0], a[1].wrapping_add(b[1])];
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.json");
        let first = w
            .fold_checkpointed(&payload, 5, &path, Some(3), || vec![0, 0], step, merge)
            .unwrap();
        assert!(!first.finished);
        assert_eq!(first.next_shard, 3);
        let rest = w
            .fold_checkpointed(&payload, 5, &path, None, || vec![0, 0], step, merge)
            .unwrap();
        assert!(rest.finished);
        let whole = w.fold(&payload, 5, || vec![0, 0], step, merge);
        assert_eq!(rest.partial, whole);
        assert_eq!(whole[0], 51840);
    }
}

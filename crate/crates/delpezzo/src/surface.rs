//! Weak del Pezzo surface types: a lattice together with its irreducible (-2)-curves,
//! the derived curve inventories, and the built-in catalog of types.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num::rational::Ratio;
use num::Zero;
use serde::Serialize;

use crate::effectivity;
use crate::picard::{DivisorClass, PicardLattice};
use crate::{input, invariant, Error, Result};

/// One connected Dynkin diagram: letter A, D or E with its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    pub letter: char,
    pub rank: usize,
}

/// A disjoint union of Dynkin diagrams, kept in the order it was written.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynkinType {
    parts: Vec<Component>,
}

impl DynkinType {
    pub fn empty() -> Self {
        DynkinType { parts: Vec::new() }
    }

    pub fn components(&self) -> &[Component] {
        &self.parts
    }

    pub fn rank(&self) -> usize {
        self.parts.iter().map(|c| c.rank).sum()
    }

    /// Order-independent form for comparing types.
    pub fn canonical(&self) -> Vec<Component> {
        let mut v = self.parts.clone();
        v.sort();
        v
    }

    pub fn same_type(&self, other: &DynkinType) -> bool {
        self.canonical() == other.canonical()
    }

    /// Node adjacency, nodes numbered component by component in standard order.
    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.rank();
        let mut adj = vec![vec![false; n]; n];
        let mut base = 0;
        for c in &self.parts {
            for (a, b) in component_edges(*c) {
                adj[base + a][base + b] = true;
                adj[base + b][base + a] = true;
            }
            base += c.rank;
        }
        adj
    }

    /// Largest number of pairwise non-adjacent nodes.
    pub fn independence_number(&self) -> usize {
        self.parts.iter().map(|c| independence(&graph_of(*c))).sum()
    }

    /// Number of roots of the corresponding root system.
    pub fn root_count(&self) -> usize {
        self.parts
            .iter()
            .map(|c| match (c.letter, c.rank) {
                ('A', n) => n * (n + 1),
                ('D', n) => 2 * n * (n - 1),
                ('E', 6) => 72,
                ('E', 7) => 126,
                ('E', 8) => 240,
                _ => unreachable!(),
            })
            .sum()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("empty");
        }
        let mut groups: Vec<(Component, usize)> = Vec::new();
        for c in &self.parts {
            match groups.last_mut() {
                Some((g, k)) if g == c => *k += 1,
                _ => groups.push((*c, 1)),
            }
        }
        let s: Vec<String> = groups
            .iter()
            .map(|(c, k)| {
                if *k == 1 {
                    format!("{}{}", c.letter, c.rank)
                } else {
                    format!("{k}{}{}", c.letter, c.rank)
                }
            })
            .collect();
        f.write_str(&s.join("+"))
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    /// Accepts labels such as `A1+2A3`, `D4+3A1`, `E6`, `empty`; a trailing `,m` line-count
    /// suffix is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.split(',').next().unwrap_or("").trim();
        if s.is_empty() || s == "empty" || s == "0" || s == "∅" {
            return Ok(DynkinType::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split('+') {
            let tok = tok.trim();
            let lead = tok.chars().take_while(|c| c.is_ascii_digit()).count();
            let mult: usize = if lead == 0 {
                1
            } else {
                tok[..lead]
                    .parse()
                    .map_err(|_| Error::Input(format!("bad multiplicity in {tok}")))?
            };
            let rest = &tok[lead..];
            let letter = rest
                .chars()
                .next()
                .ok_or_else(|| Error::Input(format!("empty component in `{s}`")))?;
            let rank: usize = rest[1..]
                .parse()
                .map_err(|_| Error::Input(format!("bad rank in `{tok}`")))?;
            let ok = match letter {
                'A' => rank >= 1,
                'D' => rank >= 4,
                'E' => (6..=8).contains(&rank),
                _ => false,
            };
            if !ok {
                return input(format!("unknown Dynkin component `{rest}`"));
            }
            for _ in 0..mult {
                parts.push(Component { letter, rank });
            }
        }
        Ok(DynkinType { parts })
    }
}

fn component_edges(c: Component) -> Vec<(usize, usize)> {
    let n = c.rank;
    match c.letter {
        'A' => (1..n).map(|i| (i - 1, i)).collect(),
        // path 0..n-2, last node hangs off node n-3
        'D' => {
            let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
            e.push((n - 3, n - 1));
            e
        }
        // path 0..n-2, last node hangs off node 2
        'E' => {
            let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
            e.push((2, n - 1));
            e
        }
        _ => unreachable!(),
    }
}

fn graph_of(c: Component) -> Vec<Vec<usize>> {
    let mut g = vec![Vec::new(); c.rank];
    for (a, b) in component_edges(c) {
        g[a].push(b);
        g[b].push(a);
    }
    g
}

fn independence(g: &[Vec<usize>]) -> usize {
    let n = g.len();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let ok = (0..n).all(|i| mask >> i & 1 == 0 || g[i].iter().all(|&j| mask >> j & 1 == 0));
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// Extended diagram of a connected type; the extra node is the last one.
fn extended_graph(c: Component) -> Vec<Vec<usize>> {
    let n = c.rank;
    let mut g = graph_of(c);
    g.push(Vec::new());
    let link = |a: usize, b: usize, g: &mut Vec<Vec<usize>>| {
        g[a].push(b);
        g[b].push(a);
    };
    match (c.letter, n) {
        ('A', 1) => link(0, 1, &mut g),
        ('A', _) => {
            link(0, n, &mut g);
            link(n - 1, n, &mut g);
        }
        ('D', _) => link(1, n, &mut g),
        ('E', 6) => link(n - 1, n, &mut g),
        ('E', 7) => link(0, n, &mut g),
        ('E', 8) => link(n - 2, n, &mut g),
        _ => unreachable!(),
    }
    g
}

/// Identifies the connected components of a simply-laced tree-like graph as Dynkin types.
fn classify_graph(g: &[Vec<usize>], alive: &[bool]) -> Option<Vec<Component>> {
    let n = g.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if !alive[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for &w in &g[v] {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        let deg = |v: usize| g[v].iter().filter(|&&w| alive[w]).count();
        let edges: usize = comp.iter().map(|&v| deg(v)).sum::<usize>() / 2;
        if edges + 1 != comp.len() {
            return None;
        }
        let k = comp.len();
        let branch: Vec<usize> = comp.iter().copied().filter(|&v| deg(v) >= 3).collect();
        if branch.is_empty() {
            out.push(Component {
                letter: 'A',
                rank: k,
            });
            continue;
        }
        if branch.len() > 1 || deg(branch[0]) > 3 {
            return None;
        }
        let b = branch[0];
        let mut arms: Vec<usize> = g[b]
            .iter()
            .filter(|&&w| alive[w])
            .map(|&w| {
                let (mut prev, mut cur, mut len) = (b, w, 1);
                loop {
                    let next: Vec<usize> = g[cur]
                        .iter()
                        .copied()
                        .filter(|&x| alive[x] && x != prev)
                        .collect();
                    if next.is_empty() {
                        break len;
                    }
                    prev = cur;
                    cur = next[0];
                    len += 1;
                }
            })
            .collect();
        arms.sort();
        let comp_type = match (arms[0], arms[1], arms[2]) {
            (1, 1, _) => Component {
                letter: 'D',
                rank: k,
            },
            (1, 2, 2) => Component {
                letter: 'E',
                rank: 6,
            },
            (1, 2, 3) => Component {
                letter: 'E',
                rank: 7,
            },
            (1, 2, 4) => Component {
                letter: 'E',
                rank: 8,
            },
            _ => return None,
        };
        out.push(comp_type);
    }
    Some(out)
}

/// All root subsystem types of the given type (including itself and the empty type),
/// by repeated node deletion from ordinary and extended diagrams of components.
pub fn subsystem_types(ambient: &DynkinType) -> BTreeSet<Vec<Component>> {
    let mut seen: BTreeSet<Vec<Component>> = BTreeSet::new();
    let mut stack = vec![ambient.canonical()];
    while let Some(t) = stack.pop() {
        if !seen.insert(t.clone()) {
            continue;
        }
        for (i, c) in t.iter().enumerate() {
            let rest: Vec<Component> = t
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, c)| *c)
                .collect();
            for g in [graph_of(*c), extended_graph(*c)] {
                for del in 0..g.len() {
                    let mut alive = vec![true; g.len()];
                    alive[del] = false;
                    if let Some(parts) = classify_graph(&g, &alive) {
                        let mut next = rest.clone();
                        next.extend(parts);
                        next.sort();
                        if !seen.contains(&next) {
                            stack.push(next);
                        }
                    }
                }
            }
        }
    }
    seen
}

/// Solves D = sum x_i R_i over the simple roots exactly.
#[derive(Clone, Debug)]
struct RootCoordinates {
    inverse: Vec<Vec<Ratio<i64>>>,
}

impl RootCoordinates {
    fn new(lat: &PicardLattice, roots: &[DivisorClass]) -> Option<Self> {
        let m = roots.len();
        let mut a: Vec<Vec<Ratio<i64>>> = (0..m)
            .map(|i| {
                let mut row: Vec<Ratio<i64>> = (0..m)
                    .map(|j| Ratio::from_integer(lat.intersect(&roots[i], &roots[j]) as i64))
                    .collect();
                row.extend((0..m).map(|j| Ratio::from_integer((i == j) as i64)));
                row
            })
            .collect();
        for col in 0..m {
            let piv = (col..m).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let p = a[col][col];
            for x in a[col].iter_mut() {
                *x /= p;
            }
            for r in 0..m {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col];
                    for c in 0..2 * m {
                        let v = a[col][c];
                        a[r][c] -= f * v;
                    }
                }
            }
        }
        Some(RootCoordinates {
            inverse: a.into_iter().map(|row| row[m..].to_vec()).collect(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceModel {
    name: String,
    dynkin: DynkinType,
    lattice: PicardLattice,
    simple_roots: Vec<DivisorClass>,
    line_count: Option<usize>,
    cartan: Vec<Vec<i32>>,
    coords: RootCoordinates,
    roots: Vec<DivisorClass>,
    lines: Vec<DivisorClass>,
    eff_roots: Vec<DivisorClass>,
    irr_lines: Vec<DivisorClass>,
    red_lines: Vec<DivisorClass>,
}

#[derive(Serialize)]
pub struct SurfaceExport {
    pub degree: i32,
    pub name: String,
    pub simple_roots: Vec<DivisorClass>,
    pub irr_minus_one: Vec<DivisorClass>,
    pub eff_roots: Vec<DivisorClass>,
}

impl SurfaceModel {
    pub fn new(
        name: &str,
        lattice: PicardLattice,
        simple_roots: Vec<DivisorClass>,
    ) -> Result<Self> {
        Self::with_type(name, DynkinType::empty(), lattice, simple_roots)
    }

    fn with_type(
        name: &str,
        dynkin: DynkinType,
        lattice: PicardLattice,
        simple_roots: Vec<DivisorClass>,
    ) -> Result<Self> {
        for r in &simple_roots {
            if r.rank() != lattice.rank() {
                return input(format!("root {r:?} has wrong length"));
            }
            if lattice.classify_r(r) != Some(-2) {
                return input(format!("{} is not a (-2)-class", lattice.render(r)));
            }
        }
        let m = simple_roots.len();
        let cartan: Vec<Vec<i32>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| lattice.intersect(&simple_roots[i], &simple_roots[j]))
                    .collect()
            })
            .collect();
        for i in 0..m {
            for j in 0..m {
                if i != j && !(0..=1).contains(&cartan[i][j]) {
                    return input(format!(
                        "simple roots {} and {} meet with product {}",
                        lattice.render(&simple_roots[i]),
                        lattice.render(&simple_roots[j]),
                        cartan[i][j]
                    ));
                }
            }
        }
        let coords = RootCoordinates::new(&lattice, &simple_roots).ok_or_else(|| {
            Error::Input(format!("simple roots of {name} are linearly dependent"))
        })?;
        let roots = lattice.enumerate_classes(-2)?;
        let lines = lattice.enumerate_classes(-1)?;

        let mut eff: BTreeSet<DivisorClass> = simple_roots.iter().copied().collect();
        let mut queue: Vec<DivisorClass> = simple_roots.clone();
        while let Some(e) = queue.pop() {
            for s in &simple_roots {
                if lattice.intersect(&e, s) == 1 {
                    let t = e + *s;
                    if eff.insert(t) {
                        queue.push(t);
                    }
                }
            }
        }
        let eff_roots: Vec<DivisorClass> = eff.into_iter().collect();
        let (irr_lines, red_lines): (Vec<_>, Vec<_>) = lines
            .iter()
            .partition(|c| simple_roots.iter().all(|r| lattice.intersect(c, r) >= 0));

        let dynkin = if dynkin.rank() == 0 && m > 0 {
            dynkin_of(&cartan)?
        } else {
            dynkin
        };
        Ok(SurfaceModel {
            name: name.to_string(),
            dynkin,
            lattice,
            simple_roots,
            line_count: None,
            cartan,
            coords,
            roots,
            lines,
            eff_roots,
            irr_lines,
            red_lines,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dynkin(&self) -> &DynkinType {
        &self.dynkin
    }

    pub fn degree(&self) -> i32 {
        self.lattice.degree()
    }

    pub fn lattice(&self) -> &PicardLattice {
        &self.lattice
    }

    pub fn simple_roots(&self) -> &[DivisorClass] {
        &self.simple_roots
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn line_count(&self) -> Option<usize> {
        self.line_count
    }

    /// All (-2)-classes of the lattice, sorted.
    pub fn roots(&self) -> &[DivisorClass] {
        &self.roots
    }

    /// All (-1)-classes of the lattice, sorted.
    pub fn minus_one_classes(&self) -> &[DivisorClass] {
        &self.lines
    }

    pub fn effective_roots(&self) -> &[DivisorClass] {
        &self.eff_roots
    }

    pub fn irreducible_minus_one_curves(&self) -> &[DivisorClass] {
        &self.irr_lines
    }

    pub fn reducible_minus_one_classes(&self) -> &[DivisorClass] {
        &self.red_lines
    }

    pub fn is_effective_root(&self, d: &DivisorClass) -> bool {
        self.eff_roots.binary_search(d).is_ok()
    }

    pub fn is_irreducible_line(&self, d: &DivisorClass) -> bool {
        self.irr_lines.binary_search(d).is_ok()
    }

    /// Irreducible negative curves: (-1)-curves followed by (-2)-curves.
    pub fn negative_curves(&self) -> impl Iterator<Item = &DivisorClass> {
        self.irr_lines.iter().chain(self.simple_roots.iter())
    }

    /// Integer coordinates of D in the simple roots, if D lies in their integer span.
    pub fn root_coordinates(&self, d: &DivisorClass) -> Option<Vec<i64>> {
        let m = self.simple_roots.len();
        let rhs: Vec<i64> = self
            .simple_roots
            .iter()
            .map(|r| self.lattice.intersect(d, r) as i64)
            .collect();
        let mut x = Vec::with_capacity(m);
        for i in 0..m {
            let mut acc = Ratio::from_integer(0i64);
            for j in 0..m {
                acc += self.coords.inverse[i][j] * rhs[j];
            }
            if !acc.is_integer() {
                return None;
            }
            x.push(acc.to_integer());
        }
        let mut back = self.lattice.zero();
        for (c, r) in x.iter().zip(&self.simple_roots) {
            back += (*c as i32) * *r;
        }
        (back == *d).then_some(x)
    }

    pub fn is_lo(&self, d: &DivisorClass) -> Result<bool> {
        let r = self.class_r(d)?;
        let deg = self.degree();
        Ok(if r <= -2 {
            !effectivity::is_effective(self, &-*d)
        } else if r <= deg - 3 {
            true
        } else {
            !effectivity::is_effective(self, &(self.lattice.canonical() + *d))
        })
    }

    pub fn is_slo(&self, d: &DivisorClass) -> Result<bool> {
        let r = self.class_r(d)?;
        let deg = self.degree();
        Ok(if r <= -3 {
            false
        } else if r == -2 {
            !effectivity::is_effective(self, d) && !effectivity::is_effective(self, &-*d)
        } else if r <= deg - 3 {
            true
        } else {
            !effectivity::is_effective(self, &(self.lattice.canonical() + *d))
        })
    }

    fn class_r(&self, d: &DivisorClass) -> Result<i32> {
        if d.rank() != self.lattice.rank() {
            return input("divisor length does not match the lattice");
        }
        self.lattice
            .classify_r(d)
            .ok_or_else(|| Error::Input(format!("{} is not an r-class", self.lattice.render(d))))
    }

    pub fn export(&self) -> SurfaceExport {
        SurfaceExport {
            degree: self.degree(),
            name: self.name.clone(),
            simple_roots: self.simple_roots.clone(),
            irr_minus_one: self.irr_lines.clone(),
            eff_roots: self.eff_roots.clone(),
        }
    }

    /// Same surface with its roots renamed through a lattice isometry given by a map on classes.
    pub fn transformed(
        &self,
        name: &str,
        map: impl Fn(&DivisorClass) -> DivisorClass,
    ) -> Result<Self> {
        let roots = self.simple_roots.iter().map(map).collect();
        let mut s = Self::with_type(name, self.dynkin.clone(), self.lattice.clone(), roots)?;
        s.line_count = self.line_count;
        Ok(s)
    }

    /// The projective plane, its one-point blow-up, and the Hirzebruch surfaces F0 and F2.
    pub fn plane() -> Self {
        Self::new("P2", PicardLattice::standard(9).unwrap(), vec![]).unwrap()
    }

    pub fn hirzebruch(k: i32) -> Result<Self> {
        match k {
            0 => Self::new("F0", PicardLattice::hirzebruch(0)?, vec![]),
            1 => Self::new("F1", PicardLattice::standard(8)?, vec![]),
            2 => {
                let lat = PicardLattice::hirzebruch(2)?;
                let section = DivisorClass::new(&[-2, 1]);
                Self::new("F2", lat, vec![section])
            }
            _ => input(format!("F{k} is not a weak del Pezzo surface")),
        }
    }
}

fn dynkin_of(cartan: &[Vec<i32>]) -> Result<DynkinType> {
    let n = cartan.len();
    let g: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && cartan[i][j] == 1).collect())
        .collect();
    match classify_graph(&g, &vec![true; n]) {
        Some(mut parts) => {
            parts.sort_by(|a, b| b.cmp(a));
            Ok(DynkinType { parts })
        }
        None => invariant("simple roots do not form a Dynkin diagram"),
    }
}

/// Lexicographically least tuple of (-2)-classes realizing the diagram: node products
/// 1 on edges and 0 otherwise, linearly independent.
pub fn search_configuration(
    lattice: &PicardLattice,
    target: &DynkinType,
) -> Option<Vec<DivisorClass>> {
    let roots = lattice.enumerate_classes(-2).ok()?;
    let adj = target.adjacency();
    let mut chosen: Vec<DivisorClass> = Vec::new();
    fn dfs(
        lattice: &PicardLattice,
        roots: &[DivisorClass],
        adj: &[Vec<bool>],
        chosen: &mut Vec<DivisorClass>,
    ) -> bool {
        let k = chosen.len();
        if k == adj.len() {
            return RootCoordinates::new(lattice, chosen).is_some();
        }
        for r in roots {
            let fits = chosen
                .iter()
                .enumerate()
                .all(|(i, c)| lattice.intersect(c, r) == adj[i][k] as i32);
            if !fits {
                continue;
            }
            chosen.push(*r);
            if RootCoordinates::new(lattice, chosen).is_some() && dfs(lattice, roots, adj, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    dfs(lattice, &roots, &adj, &mut chosen).then_some(chosen)
}

struct Row {
    label: &'static str,
    roots: &'static [&'static str],
    lines: usize,
    irr: Option<&'static [&'static str]>,
    good: Good,
}

enum Good {
    Unlisted,
    Classes(&'static [&'static str]),
    Count(usize),
}

const NONE: Good = Good::Classes(&[]);

const DEGREE7: &[Row] = &[
    Row {
        label: "empty",
        roots: &[],
        lines: 3,
        irr: Some(&["E1", "E2", "L12"]),
        good: Good::Unlisted,
    },
    Row {
        label: "A1",
        roots: &["E1-E2"],
        lines: 2,
        irr: Some(&["E2", "L12"]),
        good: Good::Unlisted,
    },
];

const DEGREE6: &[Row] = &[
    Row {
        label: "empty",
        roots: &[],
        lines: 6,
        irr: Some(&["E1", "E2", "E3", "L12", "L13", "L23"]),
        good: NONE,
    },
    Row {
        label: "A1,4",
        roots: &["E1-E2"],
        lines: 4,
        irr: Some(&["E2", "E3", "L12", "L13"]),
        good: NONE,
    },
    Row {
        label: "A1,3",
        roots: &["L123"],
        lines: 3,
        irr: Some(&["E1", "E2", "E3"]),
        good: NONE,
    },
    Row {
        label: "2A1",
        roots: &["E1-E2", "L123"],
        lines: 2,
        irr: Some(&["E2", "E3"]),
        good: NONE,
    },
    Row {
        label: "A2",
        roots: &["E1-E2", "E2-E3"],
        lines: 2,
        irr: Some(&["E3", "L12"]),
        good: Good::Classes(&["L3"]),
    },
    Row {
        label: "A1+A2",
        roots: &["E1-E2", "E2-E3", "L123"],
        lines: 1,
        irr: Some(&["E3"]),
        good: Good::Classes(&["L3"]),
    },
];

const DEGREE5: &[Row] = &[
    Row {
        label: "empty",
        roots: &[],
        lines: 10,
        irr: None,
        good: NONE,
    },
    Row {
        label: "A1",
        roots: &["E1-E2"],
        lines: 7,
        irr: Some(&["E2", "E3", "E4", "L12", "L13", "L14", "L34"]),
        good: NONE,
    },
    Row {
        label: "2A1",
        roots: &["E1-E2", "E3-E4"],
        lines: 5,
        irr: Some(&["E2", "E4", "L12", "L13", "L34"]),
        good: NONE,
    },
    Row {
        label: "A2",
        roots: &["E1-E2", "E2-E3"],
        lines: 4,
        irr: Some(&["E3", "E4", "L12", "L14"]),
        good: NONE,
    },
    Row {
        label: "A1+A2",
        roots: &["E1-E2", "E2-E3", "L123"],
        lines: 3,
        irr: Some(&["E3", "E4", "L14"]),
        good: NONE,
    },
    Row {
        label: "A3",
        roots: &["E1-E2", "E2-E3", "E3-E4"],
        lines: 2,
        irr: Some(&["E4", "L12"]),
        good: Good::Classes(&["L4"]),
    },
    Row {
        label: "A4",
        roots: &["E1-E2", "E2-E3", "E3-E4", "L123"],
        lines: 1,
        irr: Some(&["E4"]),
        good: Good::Classes(&["L4", "2L-E1234"]),
    },
];

const DEGREE4: &[Row] = &[
    Row {
        label: "empty",
        roots: &[],
        lines: 16,
        irr: None,
        good: NONE,
    },
    Row {
        label: "A1",
        roots: &["E4-E5"],
        lines: 12,
        irr: None,
        good: NONE,
    },
    Row {
        label: "2A1,9",
        roots: &["E2-E3", "E4-E5"],
        lines: 9,
        irr: Some(&["E1", "E3", "E5", "L12", "L14", "L23", "L45", "L24", "Q"]),
        good: NONE,
    },
    Row {
        label: "2A1,8",
        roots: &["L123", "E4-E5"],
        lines: 8,
        irr: Some(&["E1", "E2", "E3", "E5", "L14", "L24", "L34", "L45"]),
        good: Good::Classes(&["2L-E1235"]),
    },
    Row {
        label: "A2",
        roots: &["E3-E4", "E4-E5"],
        lines: 8,
        irr: Some(&["E1", "E2", "E5", "L12", "L13", "L23", "L34", "Q"]),
        good: NONE,
    },
    Row {
        label: "3A1",
        roots: &["L123", "E2-E3", "E4-E5"],
        lines: 6,
        irr: Some(&["E1", "E3", "E5", "L14", "L24", "L45"]),
        good: Good::Classes(&["2L-E1235"]),
    },
    Row {
        label: "A1+A2",
        roots: &["E1-E2", "E3-E4", "E4-E5"],
        lines: 6,
        irr: Some(&["E2", "E5", "L12", "L13", "L34", "Q"]),
        good: NONE,
    },
    Row {
        label: "A3,5",
        roots: &["E2-E3", "E3-E4", "E4-E5"],
        lines: 5,
        irr: Some(&["E1", "E5", "L12", "L23", "Q"]),
        good: NONE,
    },
    Row {
        label: "A3,4",
        roots: &["L123", "E3-E4", "E4-E5"],
        lines: 4,
        irr: Some(&["E1", "E2", "E5", "L34"]),
        good: Good::Classes(&["2L-E1235", "2L-E1245"]),
    },
    Row {
        label: "4A1",
        roots: &["E1-E2", "E4-E5", "L123", "L345"],
        lines: 4,
        irr: Some(&["E2", "E3", "E5", "L14"]),
        good: Good::Classes(&["2L-E2345", "2L-E1235"]),
    },
    Row {
        label: "2A1+A2",
        roots: &["E1-E2", "E2-E3", "E4-E5", "L123"],
        lines: 4,
        irr: Some(&["E3", "E5", "L14", "L45"]),
        good: Good::Classes(&["2L-E1235"]),
    },
    Row {
        label: "A1+A3",
        roots: &["E1-E2", "E3-E4", "E4-E5", "L123"],
        lines: 3,
        irr: Some(&["E2", "E5", "L34"]),
        good: Good::Classes(&["2L-E1245", "2L-E1235"]),
    },
    Row {
        label: "A4",
        roots: &["E1-E2", "E2-E3", "E3-E4", "E4-E5"],
        lines: 3,
        irr: Some(&["E5", "L12", "Q"]),
        good: Good::Classes(&["L5"]),
    },
    Row {
        label: "2A1+A3",
        roots: &["E1-E2", "L345", "E3-E4", "E4-E5", "L123"],
        lines: 2,
        irr: Some(&["E2", "E5"]),
        good: Good::Classes(&["2L-E1235", "2L-E1245", "2L-E2345"]),
    },
    Row {
        label: "D4",
        roots: &["E2-E3", "E3-E4", "E4-E5", "L123"],
        lines: 2,
        irr: Some(&["E1", "E5"]),
        good: Good::Classes(&["2L-E1235", "2L-E1245", "2L-E1345"]),
    },
    Row {
        label: "D5",
        roots: &["E1-E2", "E2-E3", "E3-E4", "E4-E5", "L123"],
        lines: 1,
        irr: Some(&["E5"]),
        good: Good::Classes(&["2L-E1235", "2L-E1245", "2L-E1345", "2L-E2345", "L5"]),
    },
];

const DEGREE3: &[Row] = &[
    Row {
        label: "empty",
        roots: &[],
        lines: 27,
        irr: None,
        good: Good::Count(0),
    },
    Row {
        label: "A1",
        roots: &["Z"],
        lines: 21,
        irr: None,
        good: Good::Count(0),
    },
    Row {
        label: "2A1",
        roots: &["E1-E2", "E3-E4"],
        lines: 16,
        irr: None,
        good: Good::Count(0),
    },
    Row {
        label: "A2",
        roots: &["E1-E2", "E2-E3"],
        lines: 15,
        irr: Some(&[
            "E3", "E4", "E5", "E6", "L12", "L14", "L15", "L16", "L45", "L46", "L56", "Q3", "Q4",
            "Q5", "Q6",
        ]),
        good: Good::Count(0),
    },
    Row {
        label: "3A1",
        roots: &["E1-E2", "E3-E4", "E5-E6"],
        lines: 12,
        irr: Some(&[
            "E2", "E4", "E6", "L12", "L34", "L56", "L13", "L15", "L35", "Q2", "Q4", "Q6",
        ]),
        good: Good::Count(0),
    },
    Row {
        label: "A1+A2",
        roots: &["E4-E5", "E1-E2", "E2-E3"],
        lines: 11,
        irr: Some(&[
            "E3", "E5", "E6", "L12", "L14", "L16", "L45", "L46", "Q3", "Q5", "Q6",
        ]),
        good: Good::Count(1),
    },
    Row {
        label: "A3",
        roots: &["E1-E2", "E2-E3", "E3-E4"],
        lines: 10,
        irr: Some(&[
            "E4", "E5", "E6", "L12", "L15", "L16", "L56", "Q4", "Q5", "Q6",
        ]),
        good: Good::Count(0),
    },
    Row {
        label: "4A1",
        roots: &["E1-E2", "E3-E4", "E5-E6", "Z"],
        lines: 9,
        irr: Some(&["E2", "E4", "E6", "L12", "L34", "L56", "L13", "L15", "L35"]),
        good: Good::Count(0),
    },
    Row {
        label: "2A1+A2",
        roots: &["E4-E5", "L123", "E1-E2", "E2-E3"],
        lines: 8,
        irr: Some(&["E3", "E5", "E6", "L14", "L16", "L45", "L46", "Q3"]),
        good: Good::Count(2),
    },
    Row {
        label: "A1+A3",
        roots: &["E5-E6", "E1-E2", "E2-E3", "E3-E4"],
        lines: 7,
        irr: Some(&["E4", "E6", "L12", "L15", "L56", "Q4", "Q6"]),
        good: Good::Count(2),
    },
    Row {
        label: "2A2",
        roots: &["E1-E2", "E2-E3", "E4-E5", "E5-E6"],
        lines: 7,
        irr: Some(&["E3", "E6", "L12", "L14", "L45", "Q3", "Q6"]),
        good: Good::Count(3),
    },
    Row {
        label: "A4",
        roots: &["E1-E2", "E2-E3", "E3-E4", "E4-E5"],
        lines: 6,
        irr: Some(&["E5", "E6", "L12", "L16", "Q5", "Q6"]),
        good: Good::Count(3),
    },
    Row {
        label: "D4",
        roots: &["E1-E2", "E3-E4", "E5-E6", "L135"],
        lines: 6,
        irr: Some(&["E2", "E4", "E6", "L12", "L34", "L56"]),
        good: Good::Count(0),
    },
    Row {
        label: "2A1+A3",
        roots: &["E5-E6", "Z", "E1-E2", "E2-E3", "E3-E4"],
        lines: 5,
        irr: Some(&["E4", "E6", "L12", "L15", "L56"]),
        good: Good::Count(4),
    },
    Row {
        label: "A1+2A2",
        roots: &["L123", "E1-E2", "E2-E3", "E4-E5", "E5-E6"],
        lines: 5,
        irr: Some(&["E3", "E6", "L14", "L45", "Q3"]),
        good: Good::Count(5),
    },
    Row {
        label: "A1+A4",
        roots: &["Z", "E1-E2", "E2-E3", "E3-E4", "E4-E5"],
        lines: 4,
        irr: Some(&["E5", "E6", "L12", "L16"]),
        good: Good::Count(6),
    },
    Row {
        label: "A5",
        roots: &["E1-E2", "E2-E3", "E3-E4", "E4-E5", "E5-E6"],
        lines: 3,
        irr: Some(&["E6", "L12", "Q6"]),
        good: Good::Count(9),
    },
    Row {
        label: "D5",
        roots: &["E1-E2", "E2-E3", "E3-E4", "E4-E5", "L126"],
        lines: 3,
        irr: Some(&["E5", "E6", "Q6"]),
        good: Good::Count(7),
    },
    Row {
        label: "3A2",
        roots: &["E1-E2", "E2-E3", "E4-E5", "E5-E6", "L123", "L456"],
        lines: 3,
        irr: Some(&["E3", "E6", "L14"]),
        good: Good::Count(9),
    },
    Row {
        label: "A1+A5",
        roots: &["Z", "E1-E2", "E2-E3", "E3-E4", "E4-E5", "E5-E6"],
        lines: 2,
        irr: Some(&["E6", "L12"]),
        good: Good::Count(12),
    },
    Row {
        label: "E6",
        roots: &["L123", "E1-E2", "E2-E3", "E3-E4", "E4-E5", "E5-E6"],
        lines: 1,
        irr: Some(&["E6"]),
        good: Good::Count(17),
    },
];

/// Degree-2 types whose diagrams contain five pairwise orthogonal nodes, plus the del Pezzo type.
pub const DEGREE2_TYPES: &[&str] = &[
    "empty", "7A1", "6A1", "5A1", "A3+3A1", "A1+2A3", "D4+2A1", "D4+3A1", "D6+A1",
];

/// Irreducible (-2)-curves of the explicit degree-2 surface of type A1+2A3.
pub const A1_2A3_ROOTS: &[&str] = &[
    "L123",
    "E1-E2",
    "E2-E3",
    "2L-E124567",
    "E4-E5",
    "E5-E6",
    "E6-E7",
];

/// Expands the shorthands Q, Z, Q_i and C_i used for degrees 4 and 3 before parsing.
pub fn parse_class(lat: &PicardLattice, text: &str) -> Result<DivisorClass> {
    let t = text.trim();
    let deg = lat.degree();
    let all: String = (1..lat.rank()).map(|i| i.to_string()).collect();
    let expanded = match (deg, t) {
        (4, "Q") => format!("2L-E{all}"),
        (3, "Z") => format!("2L-E{all}"),
        (3, _) if t.len() == 2 && (t.starts_with('Q') || t.starts_with('C')) => {
            let i = &t[1..];
            if t.starts_with('Q') {
                format!("2L-E{all}+E{i}")
            } else {
                format!("3L-E{all}-E{i}")
            }
        }
        _ => t.to_string(),
    };
    lat.parse(&expanded)
}

pub struct SurfaceCatalog {
    pub degree: i32,
    pub entries: Vec<SurfaceModel>,
}

impl SurfaceCatalog {
    pub fn get(&self, name: &str) -> Option<&SurfaceModel> {
        let want = name.trim();
        self.entries.iter().find(|s| s.name == want).or_else(|| {
            let ty: DynkinType = want.parse().ok()?;
            let mut hits = self.entries.iter().filter(|s| s.dynkin.same_type(&ty));
            let first = hits.next()?;
            hits.next().is_none().then_some(first)
        })
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|s| s.name.as_str()).collect()
    }

    /// Closest catalog name by edit distance, for error messages.
    pub fn suggest(&self, name: &str) -> Option<&str> {
        self.names()
            .into_iter()
            .min_by_key(|n| edit_distance(n, name))
    }
}

fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for i in 1..=a.len() {
        let mut cur = vec![i; b.len() + 1];
        for j in 1..=b.len() {
            let sub = prev[j - 1] + (a[i - 1] != b[j - 1]) as usize;
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        prev = cur;
    }
    prev[b.len()]
}

fn rows_for(degree: i32) -> Option<&'static [Row]> {
    match degree {
        7 => Some(DEGREE7),
        6 => Some(DEGREE6),
        5 => Some(DEGREE5),
        4 => Some(DEGREE4),
        3 => Some(DEGREE3),
        _ => None,
    }
}

/// Printed irreducible (-1)-curves for a tabulated type, when the table lists them.
pub fn tabulated_irreducible_lines(degree: i32, name: &str) -> Option<Vec<DivisorClass>> {
    let lat = PicardLattice::standard(degree).ok()?;
    let row = rows_for(degree)?.iter().find(|r| r.label == name)?;
    let mut v: Vec<DivisorClass> = row
        .irr?
        .iter()
        .map(|s| parse_class(&lat, s).unwrap())
        .collect();
    v.sort();
    Some(v)
}

/// Tabulated good 0-classes (as a list) or their number.
pub enum TabulatedGood {
    Classes(Vec<DivisorClass>),
    Count(usize),
}

pub fn tabulated_good_zero_classes(degree: i32, name: &str) -> Option<TabulatedGood> {
    let lat = PicardLattice::standard(degree).ok()?;
    let row = rows_for(degree)?.iter().find(|r| r.label == name)?;
    match &row.good {
        Good::Unlisted => None,
        Good::Count(n) => Some(TabulatedGood::Count(*n)),
        Good::Classes(v) => {
            let mut out: Vec<DivisorClass> =
                v.iter().map(|s| parse_class(&lat, s).unwrap()).collect();
            out.sort();
            Some(TabulatedGood::Classes(out))
        }
    }
}

pub fn catalog_load(degree: i32) -> Result<SurfaceCatalog> {
    let lat = PicardLattice::standard(degree)?;
    let mut entries = Vec::new();
    if let Some(rows) = rows_for(degree) {
        for row in rows {
            let roots = row
                .roots
                .iter()
                .map(|s| parse_class(&lat, s))
                .collect::<Result<Vec<_>>>()?;
            let ty: DynkinType = row.label.parse()?;
            let mut s = SurfaceModel::with_type(row.label, ty.clone(), lat.clone(), roots)?;
            if !dynkin_of(&s.cartan)?.same_type(&ty) && ty.rank() > 0 {
                return invariant(format!(
                    "degree {degree} {}: roots do not form the stated diagram",
                    row.label
                ));
            }
            if s.irr_lines.len() != row.lines {
                return invariant(format!(
                    "degree {degree} {}: {} irreducible (-1)-curves, expected {}",
                    row.label,
                    s.irr_lines.len(),
                    row.lines
                ));
            }
            s.line_count = Some(row.lines);
            entries.push(s);
        }
    } else if degree == 2 || degree == 1 {
        for label in if degree == 2 {
            DEGREE2_TYPES
        } else {
            &["empty"][..]
        } {
            entries.push(degree_low_surface(degree, label)?);
        }
    } else {
        return input(format!("no catalog for degree {degree}"));
    }
    Ok(SurfaceCatalog { degree, entries })
}

/// A degree-1 or degree-2 surface of the given diagram type, built from the lexicographically
/// least configuration (the A1+2A3 type in degree 2 uses its explicit curves).
pub fn degree_low_surface(degree: i32, label: &str) -> Result<SurfaceModel> {
    let lat = PicardLattice::standard(degree)?;
    let ty: DynkinType = label.parse()?;
    let roots = if degree == 2 && ty.same_type(&"A1+2A3".parse()?) {
        A1_2A3_ROOTS
            .iter()
            .map(|s| lat.parse(s))
            .collect::<Result<Vec<_>>>()?
    } else if ty.rank() == 0 {
        Vec::new()
    } else {
        search_configuration(&lat, &ty).ok_or_else(|| {
            Error::Input(format!("type {label} does not embed in degree {degree}"))
        })?
    };
    let mut s = SurfaceModel::with_type(label, ty, lat, roots)?;
    s.line_count = Some(s.irr_lines.len());
    Ok(s)
}

/// Every diagram type of a root subsystem of the degree-2 root system, with its
/// independence number.
pub fn degree2_subsystem_survey() -> BTreeMap<String, usize> {
    let e7: DynkinType = "E7".parse().unwrap();
    subsystem_types(&e7)
        .into_iter()
        .map(|parts| {
            let mut p = parts.clone();
            p.sort_by(|a, b| b.cmp(a));
            let t = DynkinType { parts: p };
            (t.to_string(), t.independence_number())
        })
        .collect()
}

/// Good divisors among `candidates`: each meets every irreducible (-1)-curve positively.
pub fn good_classes(s: &SurfaceModel, candidates: &[DivisorClass]) -> Vec<DivisorClass> {
    let lat = s.lattice();
    candidates
        .iter()
        .copied()
        .filter(|d| {
            s.irreducible_minus_one_curves()
                .iter()
                .all(|c| lat.intersect(c, d) >= 1)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dynkin_labels_roundtrip() {
        for s in ["A1+2A3", "D4+3A1", "E6", "7A1", "D6+A1"] {
            let t: DynkinType = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert_eq!("A3,5".parse::<DynkinType>().unwrap().to_string(), "A3");
        assert!("F4".parse::<DynkinType>().is_err());
        assert!("D3".parse::<DynkinType>().is_err());
    }

    #[test]
    fn independence_numbers() {
        let cases = [
            ("7A1", 7),
            ("A1+2A3", 5),
            ("D4+2A1", 5),
            ("D6+A1", 5),
            ("E7", 4),
            ("A7", 4),
            ("E6", 3),
        ];
        for (s, k) in cases {
            assert_eq!(
                s.parse::<DynkinType>().unwrap().independence_number(),
                k,
                "{s}"
            );
        }
    }

    #[test]
    fn extended_diagrams_have_one_more_node() {
        for s in ["A1", "A4", "D4", "D6", "E6", "E7", "E8"] {
            let t: DynkinType = s.parse().unwrap();
            let c = t.components()[0];
            let g = extended_graph(c);
            assert_eq!(g.len(), c.rank + 1, "{s}");
            // deleting the extra node gives the diagram back
            let mut alive = vec![true; g.len()];
            alive[c.rank] = false;
            assert_eq!(classify_graph(&g, &alive).unwrap(), vec![c], "{s}");
        }
    }

    #[test]
    fn known_maximal_rank_subsystems() {
        let types = subsystem_types(&"E7".parse().unwrap());
        for s in [
            "A7", "D6+A1", "A5+A2", "2A3+A1", "D4+3A1", "7A1", "E6", "A1", "empty",
        ] {
            let t: DynkinType = s.parse().unwrap();
            assert!(types.contains(&t.canonical()), "{s}");
        }
        assert!(!types.contains(&"8A1".parse::<DynkinType>().unwrap().canonical()));
        assert!(!types.contains(&"E8".parse::<DynkinType>().unwrap().canonical()));
    }

    #[test]
    fn degree2_types_with_five_orthogonal_nodes() {
        let survey = degree2_subsystem_survey();
        let mut five: Vec<String> = survey
            .into_iter()
            .filter(|(_, k)| *k >= 5)
            .map(|(s, _)| s)
            .collect();
        five.sort();
        let mut want: Vec<String> = DEGREE2_TYPES[1..]
            .iter()
            .map(|s| {
                let mut p = s.parse::<DynkinType>().unwrap().canonical();
                p.sort_by(|a, b| b.cmp(a));
                DynkinType { parts: p }.to_string()
            })
            .collect();
        want.sort();
        assert_eq!(five, want);
    }

    #[test]
    fn catalog_sizes() {
        let sizes = [(7, 2), (6, 6), (5, 7), (4, 16), (3, 21), (2, 9)];
        for (d, n) in sizes {
            assert_eq!(catalog_load(d).unwrap().entries.len(), n, "degree {d}");
        }
        assert!(catalog_load(8).is_err());
        assert!(catalog_load(0).is_err());
    }

    #[test]
    fn tabulated_lines_match() {
        for d in 3..=7 {
            let cat = catalog_load(d).unwrap();
            for s in &cat.entries {
                if let Some(want) = tabulated_irreducible_lines(d, s.name()) {
                    assert_eq!(
                        s.irreducible_minus_one_curves(),
                        &want[..],
                        "degree {d} {}",
                        s.name()
                    );
                }
            }
        }
    }

    #[test]
    fn effective_roots_examples() {
        let cat = catalog_load(6).unwrap();
        let a2 = cat.get("A2").unwrap();
        let lat = a2.lattice();
        let mut want: Vec<_> = ["E1-E2", "E2-E3", "E1-E3"]
            .iter()
            .map(|s| lat.parse(s).unwrap())
            .collect();
        want.sort();
        assert_eq!(a2.effective_roots(), &want[..]);
        assert!(cat.get("empty").unwrap().effective_roots().is_empty());
        let c4 = catalog_load(4).unwrap();
        let s = c4.get("4A1").unwrap();
        assert_eq!(s.effective_roots().len(), 4);
    }

    #[test]
    fn effective_roots_are_positive_root_counts() {
        for d in 2..=7 {
            for s in catalog_load(d).unwrap().entries {
                assert_eq!(
                    2 * s.effective_roots().len(),
                    s.dynkin().root_count(),
                    "degree {d} {}",
                    s.name()
                );
                for r in s.roots() {
                    let nonneg = s
                        .root_coordinates(r)
                        .map_or(false, |x| x.iter().all(|&c| c >= 0));
                    assert_eq!(nonneg, s.is_effective_root(r));
                }
            }
        }
    }

    #[test]
    fn irreducible_line_examples() {
        let c6 = catalog_load(6).unwrap();
        let s = c6.get("A1+A2").unwrap();
        assert_eq!(
            s.irreducible_minus_one_curves(),
            &[s.lattice().parse("E3").unwrap()]
        );
        let c3 = catalog_load(3).unwrap();
        let e6 = c3.get("E6").unwrap();
        assert_eq!(
            e6.irreducible_minus_one_curves(),
            &[e6.lattice().parse("E6").unwrap()]
        );
        assert_eq!(
            catalog_load(5)
                .unwrap()
                .get("empty")
                .unwrap()
                .irreducible_minus_one_curves()
                .len(),
            10
        );
    }

    #[test]
    fn same_diagram_types_are_told_apart() {
        let c4 = catalog_load(4).unwrap();
        assert_eq!(
            c4.get("A3,5").unwrap().irreducible_minus_one_curves().len(),
            5
        );
        assert_eq!(
            c4.get("A3,4").unwrap().irreducible_minus_one_curves().len(),
            4
        );
        // ambiguous bare type is not resolved
        assert!(c4.get("A3").is_none());
        assert_eq!(c4.suggest("A3,6"), Some("A3,5"));
    }

    #[test]
    fn root_partition() {
        for d in 2..=7 {
            for s in catalog_load(d).unwrap().entries {
                let mut slo = 0;
                for r in s.roots() {
                    let eff = s.is_effective_root(r);
                    let anti = s.is_effective_root(&-*r);
                    assert!(!(eff && anti));
                    let is_slo = s.is_slo(r).unwrap();
                    assert_eq!(is_slo, !eff && !anti);
                    assert_eq!(s.is_lo(r).unwrap(), !anti);
                    slo += is_slo as usize;
                }
                assert_eq!(slo + 2 * s.effective_roots().len(), s.roots().len());
            }
        }
    }

    #[test]
    fn lo_examples() {
        let c6 = catalog_load(6).unwrap();
        let a2 = c6.get("A2").unwrap();
        let lat = a2.lattice();
        let d = lat.parse("E1-E2").unwrap();
        assert!(a2.is_lo(&d).unwrap());
        assert!(!a2.is_slo(&d).unwrap());
        let dp = c6.get("empty").unwrap();
        assert!(dp.is_lo(&d).unwrap() && dp.is_slo(&d).unwrap());
        for deg in 2..=7 {
            for s in catalog_load(deg).unwrap().entries {
                let e1 = s.lattice().parse("E1").unwrap();
                assert!(s.is_lo(&e1).unwrap() && s.is_slo(&e1).unwrap());
            }
        }
        assert!(matches!(
            a2.is_lo(&lat.parse("2E1").unwrap()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn one_class_contracts_lemma() {
        for d in 3..=7 {
            let lat = PicardLattice::standard(d).unwrap();
            let lines = lat.enumerate_classes(-1).unwrap();
            for h in lat.enumerate_classes(1).unwrap() {
                assert!(lines.iter().all(|c| lat.intersect(c, &h) >= 0));
                let zero = lines.iter().filter(|c| lat.intersect(c, &h) == 0).count();
                assert_eq!(zero as i32, 9 - d);
            }
        }
    }

    #[test]
    fn conic_pair_lemma() {
        for d in 3..=7 {
            let lat = PicardLattice::standard(d).unwrap();
            let lines = lat.enumerate_classes(-1).unwrap();
            let conics = lat.enumerate_classes(0).unwrap();
            for a in &conics {
                assert!(lines.iter().all(|c| lat.intersect(c, a) >= 0));
                for b in conics.iter().filter(|b| lat.intersect(a, b) == 1) {
                    let zero = lines
                        .iter()
                        .filter(|c| lat.intersect(c, a) == 0 && lat.intersect(c, b) == 0)
                        .count();
                    assert_eq!(zero as i32, 8 - d);
                }
            }
        }
    }

    #[test]
    fn explicit_degree2_configuration() {
        let s = degree_low_surface(2, "A1+2A3").unwrap();
        let lat = s.lattice();
        let want: Vec<_> = A1_2A3_ROOTS.iter().map(|x| lat.parse(x).unwrap()).collect();
        assert_eq!(s.simple_roots(), &want[..]);
        assert!(s.dynkin().same_type(&"A1+2A3".parse().unwrap()));
    }

    #[test]
    fn degree2_catalog_realizes_every_type() {
        let cat = catalog_load(2).unwrap();
        for s in &cat.entries {
            let t: DynkinType = s.name().parse().unwrap();
            assert_eq!(
                dynkin_of(s.cartan()).unwrap().canonical(),
                t.canonical(),
                "{}",
                s.name()
            );
        }
    }

    #[test]
    fn configuration_search_is_lexicographically_least() {
        let lat = PicardLattice::standard(4).unwrap();
        let ty: DynkinType = "A2".parse().unwrap();
        let found = search_configuration(&lat, &ty).unwrap();
        let roots = lat.enumerate_classes(-2).unwrap();
        assert_eq!(found[0], roots[0]);
        let best = roots
            .iter()
            .find(|r| lat.intersect(&found[0], r) == 1)
            .unwrap();
        assert_eq!(found[1], *best);
    }

    #[test]
    fn linearly_dependent_roots_are_rejected() {
        let lat = PicardLattice::standard(7).unwrap();
        let r = lat.parse("E1-E2").unwrap();
        assert!(SurfaceModel::new("bad", lat.clone(), vec![r, r]).is_err());
        assert!(SurfaceModel::new("bad", lat.clone(), vec![lat.parse("E1").unwrap()]).is_err());
    }

    #[test]
    fn small_surfaces() {
        let p2 = SurfaceModel::plane();
        assert_eq!(p2.degree(), 9);
        assert!(p2.roots().is_empty() && p2.minus_one_classes().is_empty());
        let f1 = SurfaceModel::hirzebruch(1).unwrap();
        assert_eq!(f1.irreducible_minus_one_curves().len(), 1);
        let f2 = SurfaceModel::hirzebruch(2).unwrap();
        assert_eq!(f2.degree(), 8);
        assert_eq!(f2.roots().len(), 2);
        assert!(f2.minus_one_classes().is_empty());
        assert!(SurfaceModel::hirzebruch(3).is_err());
    }
}

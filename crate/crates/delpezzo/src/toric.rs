//! Toric systems, their self-intersection sequences, and exceptionality checks.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::effectivity::is_effective;
use crate::picard::{DivisorClass, PicardLattice};
use crate::surface::{parse_class, SurfaceModel};
use crate::{input, invariant, Error, Result};

/// Cyclic segment of consecutive indices, 0-based, `len` in `1..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Window {
    pub start: usize,
    pub len: usize,
}

impl Window {
    pub fn new(start: usize, len: usize) -> Self {
        Window { start, len }
    }

    pub fn indices(self, n: usize) -> impl Iterator<Item = usize> {
        (0..self.len).map(move |t| (self.start + t) % n)
    }

    pub fn contains(self, n: usize, i: usize) -> bool {
        (i + n - self.start) % n < self.len
    }

    /// Lies inside `0..n-1`, i.e. neither wraps nor touches the last term.
    pub fn is_inner(self, n: usize) -> bool {
        self.start + self.len < n
    }

    /// All proper cyclic windows in scan order: by start, then by length.
    pub fn all(n: usize) -> impl Iterator<Item = Window> {
        (0..n).flat_map(move |s| (1..n).map(move |l| Window::new(s, l)))
    }

    pub fn last(self, n: usize) -> usize {
        (self.start + self.len - 1) % n
    }
}

impl fmt::Display for Window {
    /// 1-based, matching the usual A_{k..l} notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 1 {
            write!(f, "A{}", self.start + 1)
        } else {
            write!(f, "A{}..{}", self.start + 1, self.start + self.len)
        }
    }
}

/// Square of a window from the sequence alone: A_{k..l}^2 + 2 = sum (a_i + 2).
pub fn window_square_from_sequence(a: &[i32], w: Window) -> i32 {
    w.indices(a.len()).map(|i| a[i] + 2).sum::<i32>() - 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Length { expected: usize, found: usize },
    Rank { index: usize },
    Neighbours { i: usize, j: usize, product: i32 },
    Distant { i: usize, j: usize, product: i32 },
    Sum { found: DivisorClass },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Length { expected, found } => {
                write!(f, "expected {expected} terms, found {found}")
            }
            Violation::Rank { index } => write!(f, "term {} has the wrong length", index + 1),
            Violation::Neighbours { i, j, product } => {
                write!(f, "A{}.A{} = {product}, expected 1", i + 1, j + 1)
            }
            Violation::Distant { i, j, product } => {
                write!(f, "A{}.A{} = {product}, expected 0", i + 1, j + 1)
            }
            Violation::Sum { found } => write!(f, "terms sum to {found:?} instead of -K"),
        }
    }
}

/// Every failed axiom, in index order.
pub fn check_axioms(lat: &PicardLattice, terms: &[DivisorClass]) -> Vec<Violation> {
    let n = lat.rank() + 2;
    let mut out = Vec::new();
    if terms.len() != n {
        out.push(Violation::Length {
            expected: n,
            found: terms.len(),
        });
        return out;
    }
    for (i, t) in terms.iter().enumerate() {
        if t.rank() != lat.rank() {
            out.push(Violation::Rank { index: i });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for i in 0..n {
        for j in i + 1..n {
            let p = lat.intersect(&terms[i], &terms[j]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent && p != 1 {
                out.push(Violation::Neighbours { i, j, product: p });
            } else if !adjacent && p != 0 {
                out.push(Violation::Distant { i, j, product: p });
            }
        }
    }
    let mut sum = lat.zero();
    for t in terms {
        sum += *t;
    }
    if sum != -lat.canonical() {
        out.push(Violation::Sum { found: sum });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToricSystem {
    terms: Vec<DivisorClass>,
}

#[derive(Serialize, Deserialize)]
pub struct ToricSystemJson {
    pub degree: i32,
    pub terms: Vec<DivisorClass>,
}

impl ToricSystem {
    pub fn validate(lat: &PicardLattice, terms: Vec<DivisorClass>) -> Result<Self> {
        let bad = check_axioms(lat, &terms);
        if !bad.is_empty() {
            let msg: Vec<String> = bad.iter().map(|v| v.to_string()).collect();
            return input(format!("not a toric system: {}", msg.join("; ")));
        }
        Ok(ToricSystem { terms })
    }

    pub fn parse(lat: &PicardLattice, terms: &[&str]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|t| parse_class(lat, t))
            .collect::<Result<Vec<_>>>()?;
        Self::validate(lat, parsed)
    }

    /// Trusted constructor for images of valid systems under isometries.
    pub(crate) fn from_terms_unchecked(terms: Vec<DivisorClass>) -> Self {
        ToricSystem { terms }
    }

    pub fn terms(&self) -> &[DivisorClass] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn squares(&self, lat: &PicardLattice) -> Vec<i32> {
        self.terms.iter().map(|t| lat.square(t)).collect()
    }

    pub fn window(&self, w: Window) -> DivisorClass {
        let n = self.terms.len();
        let mut acc = self.terms[w.start % n];
        for i in w.indices(n).skip(1) {
            acc += self.terms[i];
        }
        acc
    }

    /// Square of a window, computed directly and through the sequence identity.
    pub fn window_square(&self, lat: &PicardLattice, w: Window) -> Result<i32> {
        let direct = lat.square(&self.window(w));
        let via = window_square_from_sequence(&self.squares(lat), w);
        if direct != via {
            return invariant(format!(
                "window {w}: square {direct} but sequence gives {via}"
            ));
        }
        Ok(direct)
    }

    /// The terms generate the lattice: the Hermite form of the term matrix has unit pivots.
    pub fn generates_lattice(&self) -> bool {
        let rank = self.terms[0].rank();
        let mut rows: Vec<Vec<i64>> = self
            .terms
            .iter()
            .map(|t| t.coeffs().iter().map(|&x| x as i64).collect())
            .collect();
        let mut det: i64 = 1;
        let mut top = 0;
        for col in 0..rank {
            loop {
                let mut best: Option<usize> = None;
                for r in top..rows.len() {
                    if rows[r][col] != 0
                        && best.is_none_or(|b| rows[r][col].abs() < rows[b][col].abs())
                    {
                        best = Some(r);
                    }
                }
                let Some(b) = best else { return false };
                rows.swap(top, b);
                let mut done = true;
                for r in top + 1..rows.len() {
                    let q = rows[r][col] / rows[top][col];
                    if q != 0 {
                        for c in col..rank {
                            rows[r][c] -= q * rows[top][c];
                        }
                    }
                    if rows[r][col] != 0 {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            det *= rows[top][col];
            top += 1;
        }
        det.abs() == 1
    }

    /// k-th permutation (0-based): needs A_k^2 = -2.
    pub fn perm(&self, lat: &PicardLattice, k: usize) -> Result<Self> {
        let n = self.terms.len();
        if k >= n {
            return input(format!("index {k} out of range"));
        }
        if lat.square(&self.terms[k]) != -2 {
            return input(format!("A{} is not a (-2)-class", k + 1));
        }
        Ok(self.perm_unchecked(k))
    }

    pub(crate) fn perm_unchecked(&self, k: usize) -> Self {
        let n = self.terms.len();
        let a = self.terms[k];
        let mut t = self.terms.clone();
        t[(k + n - 1) % n] += a;
        t[(k + 1) % n] += a;
        t[k] = -a;
        ToricSystem { terms: t }
    }

    pub fn shift(&self) -> Self {
        let mut t = self.terms.clone();
        t.rotate_left(1);
        ToricSystem { terms: t }
    }

    pub fn symmetry(&self) -> Self {
        let n = self.terms.len();
        let mut t: Vec<DivisorClass> = self.terms[..n - 1].iter().rev().copied().collect();
        t.push(self.terms[n - 1]);
        ToricSystem { terms: t }
    }

    /// The (-1)-classes reachable by permutations, as windows with their classes.
    pub fn ixa(&self, lat: &PicardLattice) -> Vec<(Window, DivisorClass)> {
        ixa_windows(&self.squares(lat))
            .into_iter()
            .map(|w| (w, self.window(w)))
            .collect()
    }

    pub fn to_json(&self, degree: i32) -> ToricSystemJson {
        ToricSystemJson {
            degree,
            terms: self.terms.clone(),
        }
    }

    pub fn render(&self, lat: &PicardLattice) -> String {
        let parts: Vec<String> = self.terms.iter().map(|t| lat.render(t)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Windows with one entry -1 and all other entries -2.
pub fn ixa_windows(a: &[i32]) -> Vec<Window> {
    let n = a.len();
    Window::all(n)
        .filter(|w| {
            let mut ones = 0;
            for i in w.indices(n) {
                match a[i] {
                    -1 => ones += 1,
                    -2 => {}
                    _ => return false,
                }
            }
            ones == 1
        })
        .collect()
}

// ---------------------------------------------------------------------------
// sequences

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntSequence(pub Vec<i32>);

impl IntSequence {
    pub fn new(v: &[i32]) -> Self {
        IntSequence(v.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i32 {
        self.0.iter().sum()
    }

    /// m-th elementary augmentation, `1 <= m <= n + 1`.
    pub fn augment(&self, m: usize) -> Result<Self> {
        let n = self.0.len();
        if m == 0 || m > n + 1 || n == 0 {
            return input(format!("augmentation index {m} outside 1..={}", n + 1));
        }
        let mut v = self.0.clone();
        v.insert(m - 1, -1);
        let len = n + 1;
        let at = m - 1;
        v[(at + len - 1) % len] -= 1;
        v[(at + 1) % len] -= 1;
        Ok(IntSequence(v))
    }

    pub fn shift(&self) -> Self {
        let mut v = self.0.clone();
        v.rotate_left(1);
        IntSequence(v)
    }

    pub fn symmetry(&self) -> Self {
        let n = self.0.len();
        let mut v: Vec<i32> = self.0[..n - 1].iter().rev().copied().collect();
        v.push(self.0[n - 1]);
        IntSequence(v)
    }

    /// Least representative under rotations and reversal.
    pub fn canonical(&self) -> Self {
        IntSequence(dihedral_min(&self.0))
    }

    pub fn is_admissible(&self) -> bool {
        let mut failed = HashSet::new();
        reduce_to_base(&self.0, &mut failed, &mut Vec::new())
    }

    pub fn is_strong_admissible(&self) -> bool {
        let n = self.0.len();
        n > 0 && self.0[..n - 1].iter().all(|&x| x >= -2) && self.is_admissible()
    }

    pub fn is_cyclic_strong_admissible(&self) -> bool {
        self.0.iter().all(|&x| x >= -2) && self.is_admissible()
    }
}

impl fmt::Display for IntSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn dihedral_min(v: &[i32]) -> Vec<i32> {
    let n = v.len();
    let mut best = v.to_vec();
    let rev: Vec<i32> = v.iter().rev().copied().collect();
    for src in [v, &rev[..]] {
        for s in 0..n {
            let cand: Vec<i32> = (0..n).map(|i| src[(s + i) % n]).collect();
            if cand < best {
                best = cand;
            }
        }
    }
    best
}

fn is_base(v: &[i32]) -> bool {
    match v.len() {
        3 => v == [1, 1, 1],
        4 => (v[0] == 0 && v[2] == 0 && v[1] == -v[3]) || (v[1] == 0 && v[3] == 0 && v[0] == -v[2]),
        _ => false,
    }
}

/// Undo one augmentation at position `i` (an entry equal to -1).
fn blow_down_at(v: &[i32], i: usize) -> Vec<i32> {
    let n = v.len();
    let mut w = v.to_vec();
    w[(i + n - 1) % n] += 1;
    w[(i + 1) % n] += 1;
    w.remove(i);
    w
}

/// Depth-first reverse augmentation; `path` receives the removed positions on success.
fn reduce_to_base(v: &[i32], failed: &mut HashSet<Vec<i32>>, path: &mut Vec<usize>) -> bool {
    if is_base(v) {
        return true;
    }
    if v.len() <= 4 {
        return false;
    }
    let key = dihedral_min(v);
    if failed.contains(&key) {
        return false;
    }
    for i in 0..v.len() {
        if v[i] == -1 {
            path.push(i);
            if reduce_to_base(&blow_down_at(v, i), failed, path) {
                return true;
            }
            path.pop();
        }
    }
    failed.insert(key);
    false
}

/// Rows of the cyclic strong table: label and representative.
pub const CYCLIC_STRONG_TABLE: &[(&str, &[i32])] = &[
    ("P1xP1", &[0, 0, 0, 0]),
    ("F1", &[0, 1, 0, -1]),
    ("F2", &[0, 2, 0, -2]),
    ("5a", &[0, 0, -1, -1, -1]),
    ("5b", &[0, -2, -1, -1, 1]),
    ("6a", &[-1, -1, -1, -1, -1, -1]),
    ("6b", &[-1, -1, -2, -1, -1, 0]),
    ("6c", &[-2, -1, -2, -1, 0, 0]),
    ("6d", &[-2, -1, -2, -2, 0, 1]),
    ("7a", &[-1, -1, -2, -1, -2, -1, -1]),
    ("7b", &[-2, -1, -2, -2, -1, -1, 0]),
    ("8a", &[-2, -1, -2, -1, -2, -1, -2, -1]),
    ("8b", &[-2, -1, -1, -2, -1, -2, -2, -1]),
    ("8c", &[-2, -1, -2, -2, -2, -1, -2, 0]),
    ("9", &[-2, -2, -1, -2, -2, -1, -2, -2, -1]),
];

/// All admissible sequences with every entry >= -2, one per rotation/reversal class,
/// sorted by length then canonical form.
pub fn enumerate_cyclic_strong_admissible() -> Vec<IntSequence> {
    let mut seen: BTreeSet<(usize, Vec<i32>)> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
    let mut starts = vec![vec![1, 1, 1]];
    for k in -2..=2 {
        starts.push(vec![0, k, 0, -k]);
    }
    for s in starts {
        let c = dihedral_min(&s);
        if seen.insert((c.len(), c.clone())) {
            queue.push_back(c);
        }
    }
    while let Some(v) = queue.pop_front() {
        let seq = IntSequence(v.clone());
        for m in 1..=v.len() + 1 {
            let next = seq.augment(m).expect("index in range").0;
            if next.iter().all(|&x| x >= -2) {
                let c = dihedral_min(&next);
                if seen.insert((c.len(), c.clone())) {
                    queue.push_back(c);
                }
            }
        }
    }
    // the plane's sequence has length 3 and is excluded like in the table
    seen.into_iter()
        .filter(|(n, _)| *n >= 4)
        .map(|(_, v)| IntSequence(v))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    First,
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KindType {
    pub kind: Kind,
    pub type_tag: String,
    /// Left rotation applied to bring the sequence into normal position.
    pub rotation: usize,
    /// Whether the template matched after the symmetry.
    pub mirrored: bool,
}

pub fn classify_sequence(a: &IntSequence) -> Result<KindType> {
    let v = &a.0;
    let n = v.len();
    if n < 3 || !a.is_admissible() {
        return input(format!("{a} is not admissible"));
    }
    let low: Vec<usize> = (0..n).filter(|&i| v[i] <= -3).collect();
    if low.is_empty() {
        let c = dihedral_min(v);
        if n == 3 {
            return Ok(KindType {
                kind: Kind::First,
                type_tag: "P2".into(),
                rotation: 0,
                mirrored: false,
            });
        }
        for (label, row) in CYCLIC_STRONG_TABLE {
            if dihedral_min(row) == c {
                return Ok(KindType {
                    kind: Kind::First,
                    type_tag: (*label).into(),
                    rotation: 0,
                    mirrored: false,
                });
            }
        }
        return invariant(format!(
            "{a} is cyclic strong admissible but missing from the table"
        ));
    }
    if low.len() > 1 {
        return input(format!(
            "{a} has several entries below -2 and is not strong admissible"
        ));
    }
    let rotation = (low[0] + 1) % n;
    let mut norm = v.clone();
    norm.rotate_left(rotation);
    let mirrored_seq = IntSequence(norm.clone()).symmetry().0;
    for (seq, mirrored) in [(&norm, false), (&mirrored_seq, true)] {
        if let Some(tag) = second_kind_type(seq) {
            return Ok(KindType {
                kind: Kind::Second,
                type_tag: tag.into(),
                rotation,
                mirrored,
            });
        }
    }
    invariant(format!(
        "{a} is strong admissible of the second kind but matches no template"
    ))
}

/// Block of the form (0), (-1,-1) or (-1,-2,...,-2,-1) at the start of `s`; returns its length.
fn block_len(s: &[i32]) -> Option<usize> {
    match s.first()? {
        0 => Some(1),
        -1 => {
            let mut i = 1;
            while i < s.len() && s[i] == -2 {
                i += 1;
            }
            (i < s.len() && s[i] == -1).then_some(i + 1)
        }
        _ => None,
    }
}

fn all_minus_two(s: &[i32]) -> bool {
    s.iter().all(|&x| x == -2)
}

/// Matches the type II-VI templates; `s` must end with its entry below -2.
fn second_kind_type(s: &[i32]) -> Option<&'static str> {
    let n = s.len() as i32;
    let e = *s.last()?;
    if e > -3 {
        return None;
    }
    let body = &s[..s.len() - 1];
    // II: (b, c, d, e), (-2,-1,-2, c, d, e), (-2,-1,-2, c, -2,-1,-2, e)
    let ii = |prefix: &[i32], offset: i32| -> bool {
        let rest = match body.strip_prefix(prefix) {
            Some(r) => r,
            None => return false,
        };
        let Some((&c, d)) = rest.split_first() else {
            return false;
        };
        c >= -2 && block_len(d) == Some(d.len()) && c + e == offset - n
    };
    if let Some(bl) = block_len(body) {
        if ii(&body[..bl], 4) {
            return Some("IIa");
        }
    }
    if ii(&[-2, -1, -2], 5) {
        return Some("IIb");
    }
    if body.len() == 7
        && body[..3] == [-2, -1, -2]
        && body[4..] == [-2, -1, -2]
        && body[3] >= -2
        && body[3] + e == 6 - n
    {
        return Some("IIc");
    }
    let ends_minus_one = body.last() == Some(&-1);
    let inner = &body[..body.len().saturating_sub(1)];
    if ends_minus_one {
        if e == 4 - n {
            if let Some(r) = inner.strip_prefix(&[1, 0]) {
                if all_minus_two(r) {
                    return Some("IIIa");
                }
            }
            if let Some(r) = inner.strip_prefix(&[-1, 0, 0]) {
                if all_minus_two(r) {
                    return Some("IIIb");
                }
            }
            if let Some(r) = inner.strip_prefix(&[-1]) {
                if let Some(p) = r.windows(2).position(|w| w == [0, 0]) {
                    if p > 0
                        && p + 2 < r.len()
                        && all_minus_two(&r[..p])
                        && all_minus_two(&r[p + 2..])
                    {
                        return Some("IIIc");
                    }
                }
            }
            if let Some(r) = inner.strip_prefix(&[-2, 0, 1]) {
                if all_minus_two(r) {
                    return Some("IV");
                }
            }
        }
        if e == 5 - n {
            if let Some(r) = inner.strip_prefix(&[-2, -1, -1, 0]) {
                if all_minus_two(r) {
                    return Some("V");
                }
            }
        }
        if e == 6 - n {
            if let Some(r) = inner.strip_prefix(&[-2, -2, -1, -2, 0]) {
                if all_minus_two(r) {
                    return Some("VI");
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// realizing sequences

/// A toric system with the given square sequence on a blow-up of the plane, built by
/// augmenting the plane's (L, L, L) or a system on the one-point blow-up.
pub fn realize_sequence(a: &IntSequence) -> Result<ToricSystem> {
    let mut path = Vec::new();
    let mut failed = HashSet::new();
    if !realizable_path(&a.0, &mut failed, &mut path) {
        return input(format!("{a} cannot be reached from the plane or F1"));
    }
    // replay the blow-downs to recover the base sequence
    let mut stack = vec![a.0.clone()];
    for &i in &path {
        let next = blow_down_at(stack.last().unwrap(), i);
        stack.push(next);
    }
    let base = stack.last().unwrap();
    let (mut lat, mut terms) = base_system(base)?;
    for (depth, &i) in path.iter().enumerate().rev() {
        let deg = lat.degree() - 1;
        let big = PicardLattice::standard(deg)?;
        let mut lifted: Vec<DivisorClass> = terms.iter().map(|t| extend(t, big.rank())).collect();
        let e = big.basis(big.rank() - 1);
        let len = lifted.len() + 1;
        lifted.insert(i, e);
        lifted[(i + len - 1) % len] -= e;
        lifted[(i + 1) % len] -= e;
        lat = big;
        terms = lifted;
        debug_assert_eq!(
            terms.iter().map(|t| lat.square(t)).collect::<Vec<_>>(),
            stack[depth]
        );
    }
    ToricSystem::validate(&lat, terms)
}

fn extend(d: &DivisorClass, rank: usize) -> DivisorClass {
    let mut v = d.coeffs().to_vec();
    v.resize(rank, 0);
    DivisorClass::new(&v)
}

fn f1_base(v: &[i32]) -> Option<usize> {
    (0..4).find(|&s| {
        let r: Vec<i32> = (0..4).map(|i| v[(s + i) % 4]).collect();
        r[0] == 0 && r[2] == 0 && r[1] == -r[3] && r[1].rem_euclid(2) == 1
    })
}

fn realizable_path(v: &[i32], failed: &mut HashSet<Vec<i32>>, path: &mut Vec<usize>) -> bool {
    if v == [1, 1, 1] || (v.len() == 4 && f1_base(v).is_some()) {
        return true;
    }
    if v.len() <= 4 || failed.contains(v) {
        return false;
    }
    for i in 0..v.len() {
        if v[i] == -1 {
            path.push(i);
            if realizable_path(&blow_down_at(v, i), failed, path) {
                return true;
            }
            path.pop();
        }
    }
    failed.insert(v.to_vec());
    false
}

fn base_system(v: &[i32]) -> Result<(PicardLattice, Vec<DivisorClass>)> {
    if v == [1, 1, 1] {
        let lat = PicardLattice::standard(9)?;
        let l = lat.basis(0);
        return Ok((lat, vec![l, l, l]));
    }
    let s = f1_base(v).ok_or_else(|| Error::Input("no base system".into()))?;
    let lat = PicardLattice::standard(8)?;
    let l = lat.basis(0);
    let e = lat.basis(1);
    let fibre = l - e;
    let k = v[(s + 1) % 4];
    let c = (k - 1) / 2;
    let sys = [fibre, l + c * fibre, fibre, e - c * fibre];
    let mut out = vec![lat.zero(); 4];
    for i in 0..4 {
        out[(s + i) % 4] = sys[i];
    }
    Ok((lat, out))
}

// ---------------------------------------------------------------------------
// exceptionality

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    Exceptional,
    Strong,
    CyclicStrong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckPath {
    Reference,
    Optimized,
    /// The optimized path was requested outside its hypothesis.
    Fallback,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Failure {
    NotLeftOrthogonal,
    NotStronglyLeftOrthogonal,
    AntiEffective,
    Effective,
    SquareBelowMinusTwo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<(Window, Failure)>,
    pub path: CheckPath,
}

impl Verdict {
    fn pass(path: CheckPath) -> Self {
        Verdict {
            holds: true,
            witness: None,
            path,
        }
    }

    fn fail(path: CheckPath, w: Window, why: Failure) -> Self {
        Verdict {
            holds: false,
            witness: Some((w, why)),
            path,
        }
    }
}

fn require_same_lattice(s: &SurfaceModel, a: &ToricSystem) -> Result<()> {
    if a.len() != s.lattice().rank() + 2 || a.terms().iter().any(|t| t.rank() != s.lattice().rank())
    {
        return input("toric system does not live on this surface's lattice");
    }
    Ok(())
}

/// Checks every window through the left-orthogonality criteria.
pub fn check_reference(s: &SurfaceModel, a: &ToricSystem, prop: Property) -> Result<Verdict> {
    require_same_lattice(s, a)?;
    let n = a.len();
    let path = CheckPath::Reference;
    for w in Window::all(n) {
        let d = a.window(w);
        if !s.is_lo(&d)? {
            return Ok(Verdict::fail(path, w, Failure::NotLeftOrthogonal));
        }
    }
    for w in Window::all(n) {
        let wanted = match prop {
            Property::Exceptional => false,
            Property::Strong => w.is_inner(n),
            Property::CyclicStrong => true,
        };
        if wanted && !s.is_slo(&a.window(w))? {
            return Ok(Verdict::fail(path, w, Failure::NotStronglyLeftOrthogonal));
        }
    }
    Ok(Verdict::pass(path))
}

/// Checks only the (-2)-windows and the through-n windows of square A_n^2, when the
/// sequence allows it; otherwise defers to [`check_reference`].
pub fn check_optimized(s: &SurfaceModel, a: &ToricSystem, prop: Property) -> Result<Verdict> {
    require_same_lattice(s, a)?;
    let lat = s.lattice();
    let sq = a.squares(lat);
    let n = a.len();
    let path = CheckPath::Optimized;
    if prop == Property::CyclicStrong {
        if let Some(i) = (0..n).find(|&i| sq[i] < -2) {
            return Ok(Verdict::fail(
                path,
                Window::new(i, 1),
                Failure::SquareBelowMinusTwo,
            ));
        }
    } else if sq[..n - 1].iter().any(|&x| x < -2) {
        let mut v = check_reference(s, a, prop)?;
        v.path = CheckPath::Fallback;
        return Ok(v);
    }
    let last = sq[n - 1];
    for w in Window::all(n) {
        let ws = window_square_from_sequence(&sq, w);
        let through = !w.is_inner(n);
        let test_anti = if through {
            ws == -2 || (ws == last && last <= -2)
        } else {
            ws == -2
        };
        if !test_anti {
            continue;
        }
        let d = a.window(w);
        if is_effective(s, &-d) {
            return Ok(Verdict::fail(path, w, Failure::AntiEffective));
        }
        let test_eff = ws == -2
            && match prop {
                Property::Exceptional => false,
                Property::Strong => !through,
                Property::CyclicStrong => true,
            };
        if test_eff && is_effective(s, &d) {
            return Ok(Verdict::fail(path, w, Failure::Effective));
        }
    }
    Ok(Verdict::pass(path))
}

pub fn is_exceptional(s: &SurfaceModel, a: &ToricSystem) -> Result<Verdict> {
    check_optimized(s, a, Property::Exceptional)
}

pub fn is_strong_exceptional(s: &SurfaceModel, a: &ToricSystem) -> Result<Verdict> {
    check_optimized(s, a, Property::Strong)
}

pub fn is_cyclic_strong_exceptional(s: &SurfaceModel, a: &ToricSystem) -> Result<Verdict> {
    check_optimized(s, a, Property::CyclicStrong)
}

// ---------------------------------------------------------------------------
// augmentations

/// First index whose term is an irreducible (-1)-curve.
pub fn is_elementary_augmentation(s: &SurfaceModel, a: &ToricSystem) -> Option<usize> {
    a.terms().iter().position(|t| s.is_irreducible_line(t))
}

/// Searches the closure under permutations for a system with an irreducible (-1)-curve.
/// Returns the permutation indices (applied in order) and the position of the curve.
pub fn augmentation_after_permutations(
    s: &SurfaceModel,
    a: &ToricSystem,
    limit: usize,
) -> Option<(Vec<usize>, usize)> {
    let lat = s.lattice();
    let sq = a.squares(lat);
    let n = a.len();
    let movable: Vec<usize> = (0..n).filter(|&k| sq[k] == -2).collect();
    let mut seen: HashSet<Vec<DivisorClass>> = HashSet::new();
    let mut queue: VecDeque<(ToricSystem, Vec<usize>)> = VecDeque::new();
    seen.insert(a.terms().to_vec());
    queue.push_back((a.clone(), Vec::new()));
    while let Some((b, word)) = queue.pop_front() {
        if let Some(i) = is_elementary_augmentation(s, &b) {
            return Some((word, i));
        }
        if seen.len() >= limit {
            continue;
        }
        for &k in &movable {
            let c = b.perm_unchecked(k);
            if seen.insert(c.terms().to_vec()) {
                let mut w = word.clone();
                w.push(k);
                queue.push_back((c, w));
            }
        }
    }
    None
}

/// Blow-down of the irreducible (-1)-curve A_i: the smaller surface and the contracted system.
pub fn blow_down(
    s: &SurfaceModel,
    a: &ToricSystem,
    i: usize,
) -> Result<(SurfaceModel, ToricSystem)> {
    let lat = s.lattice();
    let n = a.len();
    if i >= n {
        return input(format!("index {i} out of range"));
    }
    let e = a.terms()[i];
    if !s.is_irreducible_line(&e) {
        return input(format!(
            "A{} = {} is not an irreducible (-1)-curve",
            i + 1,
            lat.render(&e)
        ));
    }
    if !lat.is_standard() || lat.degree() >= 9 {
        return input("blow-down needs a blow-up of the plane");
    }
    let mut contracted = Vec::with_capacity(n - 1);
    for j in 0..n {
        if j == i {
            continue;
        }
        let mut t = a.terms()[j];
        if j == (i + 1) % n || j == (i + n - 1) % n {
            t += e;
        }
        contracted.push(t);
    }
    let kept: Vec<DivisorClass> = s
        .simple_roots()
        .iter()
        .filter(|r| lat.intersect(r, &e) == 0)
        .copied()
        .collect();
    let target = lat.basis(lat.rank() - 1);
    let name = format!("{}/A{}", s.name(), i + 1);
    match reflection_word(s, e, target) {
        Some(word) => {
            let apply = |d: &DivisorClass| {
                let mut x = *d;
                for r in &word {
                    x += lat.intersect(&x, r) * *r;
                }
                x
            };
            let small = PicardLattice::standard(lat.degree() + 1)?;
            let down = |d: &DivisorClass| -> Result<DivisorClass> {
                let x = apply(d);
                if x.get(x.rank() - 1) != 0 {
                    return invariant("class does not descend along the blow-down");
                }
                Ok(x.truncate_last())
            };
            let terms = contracted.iter().map(down).collect::<Result<Vec<_>>>()?;
            let roots = kept.iter().map(down).collect::<Result<Vec<_>>>()?;
            let surf = SurfaceModel::new(&name, small.clone(), roots)?;
            let sys = ToricSystem::validate(&small, terms)?;
            Ok((surf, sys))
        }
        None if lat.degree() == 7 => {
            // the line through both points contracts to a quadric
            let f0 = PicardLattice::hirzebruch(0)?;
            let h1 = lat.parse("L-E1")?;
            let h2 = lat.parse("L-E2")?;
            let down = |d: &DivisorClass| {
                DivisorClass::new(&[lat.intersect(d, &h2), lat.intersect(d, &h1)])
            };
            let terms: Vec<DivisorClass> = contracted.iter().map(down).collect();
            let roots: Vec<DivisorClass> = kept.iter().map(down).collect();
            let surf = SurfaceModel::new(&name, f0.clone(), roots)?;
            let sys = ToricSystem::validate(&f0, terms)?;
            Ok((surf, sys))
        }
        None => invariant(format!(
            "no isometry moves {} to the last exceptional class",
            lat.render(&e)
        )),
    }
}

/// Reflections (applied left to right) carrying `from` to `to` among (-1)-classes.
fn reflection_word(
    s: &SurfaceModel,
    from: DivisorClass,
    to: DivisorClass,
) -> Option<Vec<DivisorClass>> {
    let lat = s.lattice();
    let mut parent: std::collections::HashMap<DivisorClass, (DivisorClass, DivisorClass)> =
        std::collections::HashMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = HashSet::from([from]);
    while let Some(c) = queue.pop_front() {
        if c == to {
            let mut word = Vec::new();
            let mut cur = c;
            while cur != from {
                let (prev, r) = parent[&cur];
                word.push(r);
                cur = prev;
            }
            word.reverse();
            return Some(word);
        }
        for r in s.roots() {
            let p = lat.intersect(&c, r);
            if p != 0 {
                let next = c + p * *r;
                if seen.insert(next) {
                    parent.insert(next, (c, *r));
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct AugmentationStep {
    pub degree: i32,
    pub permutations: Vec<usize>,
    pub index: usize,
}

/// Repeatedly finds an irreducible (-1)-curve in the permutation closure and blows it down,
/// until a surface of Picard rank 2 or the plane is reached. `None` if some stage has no
/// such curve.
pub fn decompose(
    s: &SurfaceModel,
    a: &ToricSystem,
    limit: usize,
) -> Result<Option<Vec<AugmentationStep>>> {
    let mut chain = Vec::new();
    let mut surf = s.clone();
    let mut sys = a.clone();
    while sys.len() > 4 {
        let Some((perms, idx)) = augmentation_after_permutations(&surf, &sys, limit) else {
            return Ok(None);
        };
        let mut b = sys.clone();
        for &k in &perms {
            b = b.perm_unchecked(k);
        }
        chain.push(AugmentationStep {
            degree: surf.degree(),
            permutations: perms,
            index: idx,
        });
        let (ns, nb) = blow_down(&surf, &b, idx)?;
        surf = ns;
        sys = nb;
        if surf.lattice().degree() == 9 {
            break;
        }
    }
    Ok(Some(chain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{catalog_load, A1_2A3_ROOTS};

    pub(crate) const SECTION13: &[&str] = &[
        "L25",
        "L137",
        "E3-E4",
        "L236",
        "L15",
        "E1-E7",
        "-L567",
        "3L-E1234-2E5-E67",
        "-L345",
        "-2L+E1+2E2+E5+E7",
    ];

    fn deg2() -> PicardLattice {
        PicardLattice::standard(2).unwrap()
    }

    fn section13_surface() -> SurfaceModel {
        let lat = deg2();
        let roots = A1_2A3_ROOTS.iter().map(|r| lat.parse(r).unwrap()).collect();
        SurfaceModel::new("A1+2A3", lat, roots).unwrap()
    }

    #[test]
    fn section13_system_validates_with_expected_squares() {
        let lat = deg2();
        let a = ToricSystem::parse(&lat, SECTION13).unwrap();
        assert_eq!(
            a.squares(&lat),
            vec![-1, -2, -2, -2, -1, -2, -2, -1, -2, -3]
        );
        assert!(a.generates_lattice());
    }

    #[test]
    fn plane_and_bad_sum() {
        let p2 = PicardLattice::standard(9).unwrap();
        assert!(ToricSystem::parse(&p2, &["L", "L", "L"]).is_ok());
        let bad = check_axioms(&p2, &[p2.basis(0), p2.basis(0), 2 * p2.basis(0)]);
        assert!(bad.iter().any(|v| matches!(v, Violation::Sum { .. })));
    }

    #[test]
    fn window_squares() {
        let lat = deg2();
        let a = ToricSystem::parse(&lat, SECTION13).unwrap();
        assert_eq!(a.window_square(&lat, Window::new(0, 1)).unwrap(), -1);
        assert_eq!(a.window_square(&lat, Window::new(1, 1)).unwrap(), -2);
        assert_eq!(a.window_square(&lat, Window::new(9, 1)).unwrap(), -3);
        assert_eq!(a.window_square(&lat, Window::new(8, 2)).unwrap(), -3);
        assert_eq!(
            a.window(Window::new(8, 2)),
            lat.parse("-3L+E1+2E2+E3+E4+2E5+E7").unwrap()
        );
        let mut full = lat.zero();
        for t in a.terms() {
            full += *t;
        }
        assert_eq!(full, -lat.canonical());
        for w in Window::all(10) {
            a.window_square(&lat, w).unwrap();
        }
    }

    #[test]
    fn perm_shift_sym_round_trips() {
        let lat = deg2();
        let a = ToricSystem::parse(&lat, SECTION13).unwrap();
        let p = a.perm(&lat, 1).unwrap();
        assert!(check_axioms(&lat, p.terms()).is_empty());
        assert_eq!(p.squares(&lat), a.squares(&lat));
        assert_eq!(p.perm(&lat, 1).unwrap(), a);
        let mut s = a.clone();
        for _ in 0..10 {
            s = s.shift();
        }
        assert_eq!(s, a);
        assert_eq!(a.symmetry().symmetry(), a);
        assert!(a.perm(&lat, 0).is_err());
    }

    #[test]
    fn augmentation_formula() {
        let a = IntSequence::new(&[0, 0, 0, 0]);
        assert_eq!(a.augment(1).unwrap().0, vec![-1, -1, 0, 0, -1]);
        assert_eq!(a.augment(5).unwrap().0, vec![-1, 0, 0, -1, -1]);
        assert_eq!(a.augment(3).unwrap().0, vec![0, -1, -1, -1, 0]);
        assert!(a.augment(0).is_err());
    }

    #[test]
    fn admissibility() {
        assert!(IntSequence::new(&[0, 0, -1, -1, -1]).is_admissible());
        let nine = IntSequence::new(&[-2, -2, -1, -2, -2, -1, -2, -2, -1]);
        assert!(nine.is_admissible());
        assert_eq!(nine.sum(), 12 - 27);
        assert!(IntSequence::new(&[1, 1, 1]).is_admissible());
        assert!(IntSequence::new(&[0, 5, 0, -5]).is_admissible());
        assert!(!IntSequence::new(&[0, 0, 0, -1, -1]).is_admissible());
        assert!(!IntSequence::new(&[-1, -1, -1, -1, -1]).is_admissible());
    }

    #[test]
    fn fifteen_cyclic_strong_sequences() {
        let all = enumerate_cyclic_strong_admissible();
        assert_eq!(all.len(), 15);
        let from_table: BTreeSet<Vec<i32>> = CYCLIC_STRONG_TABLE
            .iter()
            .map(|(_, v)| dihedral_min(v))
            .collect();
        let found: BTreeSet<Vec<i32>> = all.iter().map(|s| s.0.clone()).collect();
        assert_eq!(found, from_table);
        assert_eq!(all.iter().filter(|s| s.len() == 4).count(), 3);
        assert_eq!(all.iter().filter(|s| s.len() == 9).count(), 1);
        for s in &all {
            assert_eq!(s.sum(), 12 - 3 * s.len() as i32);
        }
    }

    #[test]
    fn classify_examples() {
        let t = classify_sequence(&IntSequence::new(&[-1, -2, -2, -2, -1, -2, -2, -1, -2, -3]))
            .unwrap();
        assert_eq!((t.kind, t.type_tag.as_str()), (Kind::Second, "IIb"));
        let t = classify_sequence(&IntSequence::new(&[0, 0, -1, -1, -1])).unwrap();
        assert_eq!((t.kind, t.type_tag.as_str()), (Kind::First, "5a"));
        let t = classify_sequence(&IntSequence::new(&[1, 0, -2, -2, -2, -1, -3])).unwrap();
        assert_eq!(t.type_tag, "IIIa");
        assert!(classify_sequence(&IntSequence::new(&[0, 0, 0, -1, -1])).is_err());
    }

    #[test]
    fn appendix_degree2_sequences_have_types() {
        let rows: &[(&[i32], &str)] = &[
            (&[-2, -2, -1, -2, 0, -2, -2, -2, -1, -4], "VI"),
            (&[-2, -1, -1, 0, -2, -2, -2, -2, -1, -5], "V"),
            (&[-2, 0, 1, -2, -2, -2, -2, -2, -1, -6], "IV"),
            (&[-1, -2, -2, -2, 0, 0, -2, -2, -1, -6], "IIIc"),
            (&[-1, -2, -2, -2, -2, 0, 0, -2, -1, -6], "IIIc"),
            (&[-1, -2, -2, -2, -2, -2, 0, 0, -1, -6], "IIIb"),
            (&[-1, -2, -2, -2, -2, -2, -2, 0, 1, -6], "IIIa"),
        ];
        for (v, tag) in rows {
            let t = classify_sequence(&IntSequence::new(v)).unwrap();
            assert_eq!(t.type_tag, *tag, "{v:?}");
        }
    }

    /// Every strong admissible sequence of the second kind up to length 11 (entries bounded)
    /// matches one of the templates.
    #[test]
    fn second_kind_templates_are_exhaustive() {
        let mut seen: HashSet<Vec<i32>> = HashSet::new();
        let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
        for k in -6..=6 {
            let c = dihedral_min(&[0, k, 0, -k]);
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
        let mut checked = 0;
        while let Some(v) = queue.pop_front() {
            if v.iter().filter(|&&x| x <= -3).count() == 1 {
                classify_sequence(&IntSequence(v.clone())).unwrap();
                checked += 1;
            }
            if v.len() == 11 {
                continue;
            }
            let seq = IntSequence(v.clone());
            for m in 1..=v.len() + 1 {
                let next = seq.augment(m).unwrap().0;
                if next.iter().filter(|&&x| x <= -3).count() <= 1 && next.iter().all(|&x| x >= -9) {
                    let c = dihedral_min(&next);
                    if seen.insert(c.clone()) {
                        queue.push_back(c);
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn ixa_first_kind_matches_line_counts() {
        let expected: &[(&str, usize)] = &[
            ("5a", 3),
            ("5b", 3),
            ("6a", 6),
            ("6b", 6),
            ("6c", 6),
            ("6d", 6),
            ("7a", 10),
            ("7b", 10),
            ("8a", 16),
            ("8b", 16),
            ("8c", 16),
            ("9", 27),
        ];
        for (label, size) in expected {
            let row = CYCLIC_STRONG_TABLE
                .iter()
                .find(|(l, _)| l == label)
                .unwrap()
                .1;
            assert_eq!(ixa_windows(row).len(), *size, "{label}");
            let deg = 12 - row.len() as i32;
            let lat = PicardLattice::standard(deg).unwrap();
            assert_eq!(lat.enumerate_classes(-1).unwrap().len(), *size);
        }
        assert_eq!(
            ixa_windows(&[0, 0, -1, -1, -1]),
            vec![Window::new(2, 1), Window::new(3, 1), Window::new(4, 1)]
        );
    }

    #[test]
    fn section13_ixa_is_reducible() {
        let s = section13_surface();
        let lat = s.lattice();
        let a = ToricSystem::parse(lat, SECTION13).unwrap();
        let ixa = a.ixa(lat);
        assert_eq!(ixa.len(), 22);
        let distinct: BTreeSet<DivisorClass> = ixa.iter().map(|(_, d)| *d).collect();
        assert_eq!(distinct.len(), 22);
        for (_, d) in &ixa {
            assert_eq!(lat.classify_r(d), Some(-1));
            assert!(!s.is_irreducible_line(d), "{}", lat.render(d));
        }
    }

    #[test]
    fn section13_exceptionality() {
        let s = section13_surface();
        let a = ToricSystem::parse(s.lattice(), SECTION13).unwrap();
        let strong = is_strong_exceptional(&s, &a).unwrap();
        assert!(strong.holds, "{strong:?}");
        assert_eq!(strong.path, CheckPath::Optimized);
        assert!(check_reference(&s, &a, Property::Strong).unwrap().holds);
        let cyc = is_cyclic_strong_exceptional(&s, &a).unwrap();
        assert!(!cyc.holds);
        assert_eq!(
            cyc.witness,
            Some((Window::new(9, 1), Failure::SquareBelowMinusTwo))
        );
        assert!(
            !check_reference(&s, &a, Property::CyclicStrong)
                .unwrap()
                .holds
        );
        assert!(augmentation_after_permutations(&s, &a, 100_000).is_none());
    }

    #[test]
    fn degree3_table_system_is_cyclic_strong() {
        let cat = catalog_load(3).unwrap();
        let s = cat.get("3A2").unwrap();
        let a = ToricSystem::parse(
            s.lattice(),
            &[
                "E2-E4", "L125", "E5", "E1-E5", "L136", "E6", "E3-E6", "L234", "E4",
            ],
        )
        .unwrap();
        assert!(is_cyclic_strong_exceptional(s, &a).unwrap().holds);
        assert!(
            check_reference(s, &a, Property::CyclicStrong)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn example_needs_cyclic_permutation() {
        let lat = PicardLattice::standard(4).unwrap();
        let roots = vec![lat.parse("L123").unwrap(), lat.parse("E4-E5").unwrap()];
        let s = SurfaceModel::new("2A1,8", lat.clone(), roots).unwrap();
        assert_eq!(s.irreducible_minus_one_curves().len(), 8);
        let a = ToricSystem::parse(
            &lat,
            &[
                "L145", "E4", "L234", "L-E5", "E5-E1", "L35", "E3-E2", "-L+E125",
            ],
        )
        .unwrap();
        assert_eq!(is_elementary_augmentation(&s, &a), None);
        let b = a.perm(&lat, 7).unwrap().perm(&lat, 6).unwrap();
        assert_eq!(b.terms()[5], lat.parse("E1").unwrap());
        assert_eq!(is_elementary_augmentation(&s, &b), Some(5));
        assert!(is_cyclic_strong_exceptional(&s, &a).unwrap().holds);
        let (word, _) = augmentation_after_permutations(&s, &a, 10_000).unwrap();
        assert!(!word.is_empty());
    }

    #[test]
    fn blow_down_degree6_table_system() {
        let cat = catalog_load(6).unwrap();
        let s = cat.get("empty").unwrap();
        let a = ToricSystem::parse(s.lattice(), &["L13", "E1", "L12", "E2", "L23", "E3"]).unwrap();
        assert_eq!(is_elementary_augmentation(s, &a), Some(0));
        let (small, b) = blow_down(s, &a, 1).unwrap();
        assert_eq!(small.degree(), 7);
        assert_eq!(b.len(), 5);
        let chain = decompose(s, &a, 1000).unwrap().unwrap();
        assert!(!chain.is_empty());
    }

    #[test]
    fn blow_down_to_quadric() {
        let lat = PicardLattice::standard(7).unwrap();
        let s = SurfaceModel::new("empty", lat.clone(), vec![]).unwrap();
        let a = ToricSystem::parse(&lat, &["L1", "E1", "L12", "E2", "L2"]).unwrap();
        let (small, b) = blow_down(&s, &a, 2).unwrap();
        assert_eq!(small.lattice().rank(), 2);
        assert_eq!(b.len(), 4);
        assert!(blow_down(&s, &a, 0).is_err());
    }

    #[test]
    fn realize_type9_and_7b() {
        for v in [
            &[-2, -2, -1, -2, -2, -1, -2, -2, -1][..],
            &[-2, -1, -2, -2, -1, -1, 0],
        ] {
            let seq = IntSequence::new(v);
            let a = realize_sequence(&seq).unwrap();
            let lat = PicardLattice::standard(12 - v.len() as i32).unwrap();
            assert_eq!(a.squares(&lat), v.to_vec());
        }
        let a =
            realize_sequence(&IntSequence::new(&[-1, -2, -2, -2, -1, -2, -2, -1, -2, -3])).unwrap();
        assert_eq!(a.len(), 10);
    }
}

//! The realized automorphism group of the lattice and its orbit machinery.
//!
//! The group is generated by the trivial automorphisms — permuting the eᵢ and
//! eᵢ ↦ −eᵢ — together with one reflection: across `H − e₁ − e₂` when k = 2,
//! or across `H − e₁ − e₂ − e₃` when k ≥ 3. Orbit questions are decided only
//! inside a cap on |a|, since the group is infinite for large k; a negative
//! answer is therefore always "distinct within the bound", never "distinct".

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num::{BigInt, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticeClass;

/// The two reflection kinds the group realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReflectionKind {
    /// Root `H − eᵢ − eⱼ` of square −1; the k = 2 generator.
    Pair,
    /// Root `H − eᵢ − eⱼ − eₗ` of square −2; the Cremona generator, legal for
    /// k ≥ 3. Its root is orthogonal to `K_st`, so it preserves `K_st`-pairings.
    Cremona,
}

/// A reflection across one of the two admissible root shapes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Reflection {
    kind: ReflectionKind,
    indices: Vec<usize>,
}

impl Reflection {
    pub fn pair(i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::Index(format!("pair root needs distinct indices, got {i},{j}")));
        }
        let mut indices = vec![i, j];
        indices.sort_unstable();
        Ok(Self { kind: ReflectionKind::Pair, indices })
    }

    pub fn cremona(i: usize, j: usize, l: usize) -> Result<Self> {
        if i == j || j == l || i == l {
            return Err(Error::Index(format!(
                "cremona root needs distinct indices, got {i},{j},{l}"
            )));
        }
        let mut indices = vec![i, j, l];
        indices.sort_unstable();
        Ok(Self { kind: ReflectionKind::Cremona, indices })
    }

    pub fn kind(&self) -> ReflectionKind {
        self.kind
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// The root class `H − Σ e_{index}` over `k` blow-ups.
    pub fn root(&self, k: usize) -> Result<LatticeClass> {
        let max = *self.indices.iter().max().expect("nonempty");
        if max >= k {
            return Err(Error::Index(format!(
                "reflection index {max} out of range for k={k}"
            )));
        }
        let mut b = vec![BigInt::zero(); k];
        for &i in &self.indices {
            b[i] = BigInt::from(1);
        }
        Ok(LatticeClass::new(BigInt::from(1), b))
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            ReflectionKind::Pair => "pair",
            ReflectionKind::Cremona => "cremona",
        };
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{name}({})", idx.join(","))
    }
}

/// Apply the reflection `s_r(x) = x − 2(⟨x,r⟩/⟨r,r⟩)·r`.
///
/// For the pair root (square −1) this is `x + 2⟨x,r⟩·r`; for the Cremona root
/// (square −2) it is `x + ⟨x,r⟩·r`. Both keep the class integral and preserve
/// the pairing; the Cremona kind additionally preserves `K_st`-pairings.
pub fn reflect(x: &LatticeClass, r: &Reflection) -> Result<LatticeClass> {
    let root = r.root(x.k())?;
    let c = x.pair(&root)?;
    let factor = match r.kind {
        ReflectionKind::Pair => c * BigInt::from(2),
        ReflectionKind::Cremona => c,
    };
    x.add(&root.scale(&factor))
}

/// `square = −1` and `K_st·x = −1`; the operational test for exceptional
/// classes.
pub fn is_exceptional(x: &LatticeClass) -> bool {
    x.square() == BigInt::from(-1) && x.k_dot() == BigInt::from(-1)
}

/// One elementary step of a group word. Witness words are sequences of these,
/// replayable move by move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Global sign ξ ↦ −ξ. Not a group generator; only appears when a search
    /// was explicitly allowed to identify ±ξ.
    Negate,
    /// eᵢ ↦ −eᵢ, i.e. flip the sign of bᵢ.
    Flip(usize),
    /// Relabel the eᵢ: the new b-vector is `b'[j] = b[perm[j]]`.
    Permute(Vec<usize>),
    Reflect(Reflection),
}

impl Move {
    pub fn apply(&self, x: &LatticeClass) -> Result<LatticeClass> {
        match self {
            Move::Negate => Ok(x.neg()),
            Move::Flip(i) => {
                if *i >= x.k() {
                    return Err(Error::Index(format!("flip index {i} out of range")));
                }
                let mut b = x.b().to_vec();
                b[*i] = -&b[*i];
                Ok(LatticeClass::new(x.a().clone(), b))
            }
            Move::Permute(p) => {
                if p.len() != x.k() || !is_permutation(p) {
                    return Err(Error::Index(format!("bad permutation {p:?} for k={}", x.k())));
                }
                let b = p.iter().map(|&i| x.b()[i].clone()).collect();
                Ok(LatticeClass::new(x.a().clone(), b))
            }
            Move::Reflect(r) => reflect(x, r),
        }
    }

    pub fn inverse(&self) -> Move {
        match self {
            Move::Negate => Move::Negate,
            Move::Flip(i) => Move::Flip(*i),
            Move::Permute(p) => {
                let mut inv = vec![0usize; p.len()];
                for (j, &i) in p.iter().enumerate() {
                    inv[i] = j;
                }
                Move::Permute(inv)
            }
            Move::Reflect(r) => Move::Reflect(r.clone()),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Negate => write!(f, "negate"),
            Move::Flip(i) => write!(f, "flip({i})"),
            Move::Permute(p) => {
                let idx: Vec<String> = p.iter().map(|i| i.to_string()).collect();
                write!(f, "perm({})", idx.join(","))
            }
            Move::Reflect(r) => write!(f, "{r}"),
        }
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &i in p {
        if i >= p.len() || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

/// Apply a word left to right.
pub fn apply_moves(x: &LatticeClass, word: &[Move]) -> Result<LatticeClass> {
    let mut cur = x.clone();
    for m in word {
        cur = m.apply(&cur)?;
    }
    Ok(cur)
}

fn inverse_word(word: &[Move]) -> Vec<Move> {
    word.iter().rev().map(Move::inverse).collect()
}

/// Trivial normalization together with the explicit word that realizes it:
/// sign flips on the negative entries, then one stable descending sort.
pub fn normalize_with_moves(x: &LatticeClass) -> (LatticeClass, Vec<Move>) {
    let mut moves = Vec::new();
    let mut b = x.b().to_vec();
    for (i, v) in b.iter_mut().enumerate() {
        if v.is_negative() {
            *v = -&*v;
            moves.push(Move::Flip(i));
        }
    }
    let mut order: Vec<usize> = (0..b.len()).collect();
    order.sort_by(|&i, &j| b[j].cmp(&b[i]).then(i.cmp(&j)));
    if order.iter().enumerate().any(|(j, &i)| i != j) {
        moves.push(Move::Permute(order.clone()));
    }
    let sorted = order.iter().map(|&i| b[i].clone()).collect();
    let normal = LatticeClass::new(x.a().clone(), sorted);
    debug_assert_eq!(normal, x.normalize_trivial());
    (normal, moves)
}

/// Descent key: (|a|, b lexicographic) on trivial-normal forms.
fn key(x: &LatticeClass) -> (BigInt, Vec<BigInt>) {
    (x.a().abs(), x.b().to_vec())
}

/// The single reduction move used by the greedy descent: the Cremona
/// reflection on the three largest bᵢ, or the pair root on both entries when
/// k = 2. None for k < 2.
fn descent_reflection(k: usize) -> Option<Reflection> {
    match k {
        0 | 1 => None,
        2 => Some(Reflection::pair(0, 1).expect("distinct")),
        _ => Some(Reflection::cremona(0, 1, 2).expect("distinct")),
    }
}

/// Greedy key descent to the declared reduced form, returning the group word
/// that realizes it. Each step trivially normalizes, then applies the descent
/// reflection only when it strictly decreases the key; a visited set guards
/// against cycles.
pub fn reduce_with_moves(x: &LatticeClass) -> (LatticeClass, Vec<Move>) {
    let (mut cur, mut word) = normalize_with_moves(x);
    let mut visited: HashSet<LatticeClass> = HashSet::new();
    visited.insert(cur.clone());
    while let Some(r) = descent_reflection(cur.k()) {
        let reflected = reflect(&cur, &r).expect("descent reflection is legal");
        let (cand, norm_moves) = normalize_with_moves(&reflected);
        if key(&cand) < key(&cur) && visited.insert(cand.clone()) {
            word.push(Move::Reflect(r));
            word.extend(norm_moves);
            cur = cand;
        } else {
            break;
        }
    }
    (cur, word)
}

/// Deterministic local minimum of the descent key; see [`reduce_with_moves`].
pub fn reduce(x: &LatticeClass) -> LatticeClass {
    reduce_with_moves(x).0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitStatus {
    Equivalent,
    /// Not reached inside the |a| cap. The group is infinite for k ≥ 9, so
    /// this is never a proof of distinctness.
    DistinctWithinBound,
}

#[derive(Debug, Clone)]
pub struct OrbitVerdict {
    pub status: OrbitStatus,
    /// A group word mapping x exactly onto y, when equivalent.
    pub witness: Option<Vec<Move>>,
    /// Number of trivial-normal classes visited.
    pub explored: usize,
    /// The |a| cap that bounded the search.
    pub bound: i64,
}

/// Breadth-first closure of `x` under the generators, restricted to
/// `|a| ≤ cap`, canonicalizing by trivial normalization at every node.
///
/// `allow_global_sign` additionally accepts `−y`; the global sign is not a
/// group generator (unoriented spheres represent ±ξ), so it is an explicit
/// opt-in and is recorded in the witness as a `negate` move.
pub fn orbit_equivalent(
    x: &LatticeClass,
    y: &LatticeClass,
    cap: i64,
    allow_global_sign: bool,
) -> Result<OrbitVerdict> {
    if x.k() != y.k() {
        return Err(Error::DimensionMismatch(x.k(), y.k()));
    }
    let cap_big = BigInt::from(cap);
    if x.a().abs() > cap_big || y.a().abs() > cap_big {
        return Err(Error::Domain(format!(
            "cap {cap} is below the inputs' |a|"
        )));
    }

    let (nx, moves_x) = normalize_with_moves(x);
    let (ny, moves_y) = normalize_with_moves(y);
    let neg_y = y.neg();
    let neg_target = if allow_global_sign {
        Some(normalize_with_moves(&neg_y))
    } else {
        None
    };

    // Per-node edges: pre-flip some of the chosen entries, reflect, then
    // re-normalize. Conjugating the one root shape by the trivial moves in
    // this way realizes every root the group contains.
    let k = x.k();
    let edges_of = |node: &LatticeClass| -> Vec<(Vec<Move>, LatticeClass)> {
        let mut out = Vec::new();
        let mut emit = |positions: &[usize], r: Reflection, node: &LatticeClass| {
            let nmask = 1u32 << positions.len();
            'mask: for mask in 0..nmask {
                let mut flips = Vec::new();
                for (bit, &pos) in positions.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        if node.b()[pos].is_zero() {
                            continue 'mask; // flipping a zero duplicates mask 0
                        }
                        flips.push(Move::Flip(pos));
                    }
                }
                let mut cur = node.clone();
                for f in &flips {
                    cur = f.apply(&cur).expect("flip in range");
                }
                let reflected = reflect(&cur, &r).expect("legal reflection");
                let (cand, norm_moves) = normalize_with_moves(&reflected);
                let mut word = flips;
                word.push(Move::Reflect(r.clone()));
                word.extend(norm_moves);
                out.push((word, cand));
            }
        };
        if k >= 3 {
            for i in 0..k {
                for j in i + 1..k {
                    for l in j + 1..k {
                        emit(&[i, j, l], Reflection::cremona(i, j, l).unwrap(), node);
                    }
                }
            }
        } else if k == 2 {
            emit(&[0, 1], Reflection::pair(0, 1).unwrap(), node);
        }
        out
    };

    let matches = |node: &LatticeClass| -> Option<Vec<Move>> {
        if *node == ny {
            // node == normal(y); undo y's normalization to land exactly on y
            Some(inverse_word(&moves_y))
        } else if let Some((nny, moves_neg)) = &neg_target {
            if *node == *nny {
                let mut tail = inverse_word(moves_neg);
                tail.push(Move::Negate);
                Some(tail)
            } else {
                None
            }
        } else {
            None
        }
    };

    let mut ids: HashMap<LatticeClass, usize> = HashMap::new();
    let mut nodes: Vec<LatticeClass> = Vec::new();
    let mut parent: Vec<Option<(usize, Vec<Move>)>> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let witness_for = |idx: usize,
                       tail: Vec<Move>,
                       parent: &[Option<(usize, Vec<Move>)>]| {
        let mut chain = Vec::new();
        let mut at = idx;
        while let Some((p, word)) = &parent[at] {
            chain.push(word.clone());
            at = *p;
        }
        let mut witness = moves_x.clone();
        for word in chain.into_iter().rev() {
            witness.extend(word);
        }
        witness.extend(tail);
        witness
    };

    ids.insert(nx.clone(), 0);
    nodes.push(nx.clone());
    parent.push(None);
    queue.push_back(0);

    if let Some(tail) = matches(&nx) {
        let witness = witness_for(0, tail, &parent);
        debug_assert_eq!(apply_moves(x, &witness)?, *y);
        return Ok(OrbitVerdict {
            status: OrbitStatus::Equivalent,
            witness: Some(witness),
            explored: 1,
            bound: cap,
        });
    }

    while let Some(at) = queue.pop_front() {
        let node = nodes[at].clone();
        for (word, cand) in edges_of(&node) {
            if cand.a().abs() > cap_big || ids.contains_key(&cand) {
                continue;
            }
            let idx = nodes.len();
            ids.insert(cand.clone(), idx);
            nodes.push(cand.clone());
            parent.push(Some((at, word)));
            if let Some(tail) = matches(&cand) {
                let witness = witness_for(idx, tail, &parent);
                debug_assert_eq!(apply_moves(x, &witness)?, *y);
                return Ok(OrbitVerdict {
                    status: OrbitStatus::Equivalent,
                    witness: Some(witness),
                    explored: nodes.len(),
                    bound: cap,
                });
            }
            queue.push_back(idx);
        }
    }

    Ok(OrbitVerdict {
        status: OrbitStatus::DistinctWithinBound,
        witness: None,
        explored: nodes.len(),
        bound: cap,
    })
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// All trivial-normal classes over `k` with the given square, `0 ≤ a ≤ a_max`,
/// that are fixed points of [`reduce`]; sorted lexicographically.
pub fn enumerate_reduced(k: usize, square: i64, a_max: i64) -> Vec<LatticeClass> {
    let mut out = Vec::new();
    for a in 0..=a_max.max(0) {
        let target = a * a - square; // Σ bᵢ²
        if target < 0 {
            continue;
        }
        let mut b = Vec::with_capacity(k);
        gen_descending(k, target, i64::MAX, &mut b, &mut |b| {
            let cls = LatticeClass::from_i64(a, b);
            if reduce(&cls) == cls {
                out.push(cls);
            }
        });
    }
    out.sort();
    out
}

/// Generate non-increasing vectors of length `slots` with Σ v² = `target`,
/// entries in `0..=max_val`.
fn gen_descending(
    slots: usize,
    target: i64,
    max_val: i64,
    acc: &mut Vec<i64>,
    f: &mut impl FnMut(&[i64]),
) {
    if slots == 0 {
        if target == 0 {
            f(acc);
        }
        return;
    }
    let hi = isqrt(target).min(max_val);
    for v in (0..=hi).rev() {
        if v == 0 && target != 0 {
            continue;
        }
        acc.push(v);
        gen_descending(slots - 1, target - v * v, v, acc, f);
        acc.pop();
    }
}

/// All classes with `0 ≤ a ≤ a_max`, square −1 and `K_st`-pairing −1, i.e.
/// the exceptional classes the enumeration bound reaches; sorted. The b-range
/// is pruned by `Σ bᵢ² = a² + 1` together with the running sum needed for
/// `Σ bᵢ = 3a − 1`.
pub fn enumerate_exceptional(k: usize, a_max: i64) -> Vec<LatticeClass> {
    let mut out = Vec::new();
    for a in 0..=a_max.max(0) {
        let sq_target = a * a + 1;
        let sum_target = 3 * a - 1;
        let mut b = Vec::with_capacity(k);
        gen_signed(k, sq_target, sum_target, &mut b, &mut |b| {
            out.push(LatticeClass::from_i64(a, b));
        });
    }
    out.sort();
    out
}

fn gen_signed(
    slots: usize,
    sq_left: i64,
    sum_left: i64,
    acc: &mut Vec<i64>,
    f: &mut impl FnMut(&[i64]),
) {
    if slots == 0 {
        if sq_left == 0 && sum_left == 0 {
            f(acc);
        }
        return;
    }
    let hi = isqrt(sq_left);
    // remaining entries can move the sum by at most (slots-1)·hi' where
    // hi' ≤ isqrt of the remaining square budget; hi is a safe overestimate
    for v in -hi..=hi {
        let sq = sq_left - v * v;
        if sq < 0 {
            continue;
        }
        let reach = (slots as i64 - 1) * isqrt(sq);
        if (sum_left - v).abs() > reach {
            continue;
        }
        acc.push(v);
        gen_signed(slots - 1, sq, sum_left - v, acc, f);
        acc.pop();
    }
}

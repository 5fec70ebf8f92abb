//! The representability screen for −4-sphere classes.
//!
//! A class ξ = (a, b₁, …, bₖ) of square −4 can only be represented by an
//! embedded symplectic sphere if some sign assignment ξ̃ = (±a, ±b₁, …, ±bₖ)
//! pairs to 2 against the standard canonical class — the value adjunction
//! forces on an embedded −4-sphere. Entries bᵢ = 1 are pinned to contribute
//! −1 (the complementary convention is a separate, opt-in mode). Assignments
//! that do reach 2 are then tested for being a multiple of an exceptional
//! class, and for meeting an exceptional class in a single point.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticeClass;
use crate::weyl::{self, Move, OrbitStatus};

/// How entries bᵢ = 1 transform under the screening diffeomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConvention {
    /// bᵢ = 1 ↦ −1; the default case split.
    OnesNegative,
    /// bᵢ = 1 ↦ +1; the starred cases.
    OnesPositive,
}

/// Signs of the transformed tuple: ξ̃ = (a_sign·a, b_signs[i]·bᵢ).
/// Entries with bᵢ = 1 carry the convention's forced sign; zeros stay +1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub a_sign: i8,
    pub b_signs: Vec<i8>,
}

/// The attainable values of `K_st·ξ̃` over all admissible sign assignments,
/// with one witness assignment per value.
#[derive(Debug, Clone)]
pub struct AdjunctionValueSet {
    pub values: BTreeSet<BigInt>,
    pub witnesses: BTreeMap<BigInt, Assignment>,
}

impl AdjunctionValueSet {
    pub fn contains_two(&self) -> bool {
        self.values.contains(&BigInt::from(2))
    }
}

fn check_screen_input(xi: &LatticeClass) -> Result<()> {
    if xi.square() != BigInt::from(-4) {
        return Err(Error::Domain(format!(
            "class {xi} has square {}, screening needs -4",
            xi.square()
        )));
    }
    if !xi.is_trivial_normal() {
        return Err(Error::Domain(format!(
            "class {xi} is not in trivial-normal form"
        )));
    }
    Ok(())
}

fn enumerate_assignments(
    xi: &LatticeClass,
    convention: SignConvention,
    mut f: impl FnMut(&Assignment, &LatticeClass),
) {
    let forced: i8 = match convention {
        SignConvention::OnesNegative => -1,
        SignConvention::OnesPositive => 1,
    };
    let one = BigInt::one();
    let free: Vec<usize> = (0..xi.k()).filter(|&i| xi.b()[i] > one).collect();
    let a_signs: &[i8] = if xi.a().is_zero() { &[1] } else { &[1, -1] };
    for &a_sign in a_signs {
        for mask in 0u32..(1 << free.len()) {
            let mut b_signs = vec![1i8; xi.k()];
            for (i, v) in xi.b().iter().enumerate() {
                if *v == one {
                    b_signs[i] = forced;
                }
            }
            for (bit, &i) in free.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    b_signs[i] = -1;
                }
            }
            let assignment = Assignment { a_sign, b_signs };
            let cls = assignment_class(xi, &assignment);
            f(&assignment, &cls);
        }
    }
}

fn assignment_class(xi: &LatticeClass, assignment: &Assignment) -> LatticeClass {
    let a = xi.a() * BigInt::from(assignment.a_sign as i64);
    let b = xi
        .b()
        .iter()
        .zip(&assignment.b_signs)
        .map(|(v, &s)| v * BigInt::from(s as i64))
        .collect();
    LatticeClass::new(a, b)
}

/// The value set under the default forced-negative unit signs.
pub fn value_set(xi: &LatticeClass) -> Result<AdjunctionValueSet> {
    value_set_with(xi, SignConvention::OnesNegative)
}

pub fn value_set_with(
    xi: &LatticeClass,
    convention: SignConvention,
) -> Result<AdjunctionValueSet> {
    check_screen_input(xi)?;
    let mut values = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    enumerate_assignments(xi, convention, |assignment, cls| {
        let v = cls.k_dot();
        values.insert(v.clone());
        witnesses.entry(v).or_insert_with(|| assignment.clone());
    });
    Ok(AdjunctionValueSet { values, witnesses })
}

/// The concrete class ξ̃ realizing an assignment; always of square −4 and
/// with `K_st·ξ̃` equal to the assignment's value.
pub fn witness_class(xi: &LatticeClass, assignment: &Assignment) -> Result<LatticeClass> {
    check_screen_input(xi)?;
    if assignment.b_signs.len() != xi.k() {
        return Err(Error::Domain(format!(
            "assignment length {} does not match k={}",
            assignment.b_signs.len(),
            xi.k()
        )));
    }
    if assignment.a_sign.abs() != 1 || assignment.b_signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::Domain("assignment signs must be ±1".into()));
    }
    Ok(assignment_class(xi, assignment))
}

/// All distinct transformed classes attaining a given value, sorted.
pub fn witnesses_of_value(
    xi: &LatticeClass,
    value: &BigInt,
    convention: SignConvention,
) -> Result<Vec<LatticeClass>> {
    check_screen_input(xi)?;
    let mut out = BTreeSet::new();
    enumerate_assignments(xi, convention, |_, cls| {
        if cls.k_dot() == *value {
            out.insert(cls.clone());
        }
    });
    Ok(out.into_iter().collect())
}

/// Factor ξ̃ = m·E with |m| ≥ 2 and E an exceptional class with
/// `0 ≤ a ≤ a_max` (the orientation the enumeration uses), when possible.
pub fn multiple_of_exceptional(
    xi_tilde: &LatticeClass,
    a_max: i64,
) -> Option<(BigInt, LatticeClass)> {
    let neg_sq = -xi_tilde.square();
    if neg_sq < BigInt::from(4) {
        return None;
    }
    let m_abs = neg_sq.sqrt();
    if &m_abs * &m_abs != neg_sq {
        return None;
    }
    for m in [m_abs.clone(), -m_abs] {
        if let Some(e) = xi_tilde.divide_exact(&m) {
            if weyl::is_exceptional(&e)
                && !e.a().is_negative()
                && *e.a() <= BigInt::from(a_max)
            {
                return Some((m, e));
            }
        }
    }
    None
}

/// Exceptional classes from the bounded catalog meeting ξ̃ in exactly one
/// point, sorted.
pub fn unit_meeting_exceptional(xi_tilde: &LatticeClass, a_max: i64) -> Vec<LatticeClass> {
    weyl::enumerate_exceptional(xi_tilde.k(), a_max)
        .into_iter()
        .filter(|e| e.pair(xi_tilde).expect("same k") == BigInt::one())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScreenOutcome {
    /// 2 is not an attainable adjunction value.
    NotRepresentable,
    /// Every assignment reaching 2 is a multiple of an exceptional class.
    MultipleOfExceptional,
    /// Some surviving assignment meets an exceptional class in one point.
    NsmPositive,
    Inconclusive,
}

impl ScreenOutcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScreenOutcome::NotRepresentable => "not-representable",
            ScreenOutcome::MultipleOfExceptional => "multiple-of-exceptional",
            ScreenOutcome::NsmPositive => "nsm-positive",
            ScreenOutcome::Inconclusive => "inconclusive",
        }
    }
}

/// Screen result with replayable evidence: every reported ξ̃ satisfies
/// `K_st·ξ̃ = 2` and `ξ̃² = −4`.
#[derive(Debug, Clone)]
pub struct ScreenVerdict {
    pub outcome: ScreenOutcome,
    pub values: BTreeSet<BigInt>,
    /// All distinct assignments of value 2.
    pub witnesses_of_two: Vec<LatticeClass>,
    /// Discarded witnesses with their factorizations (m, E, ξ̃).
    pub multiples: Vec<(BigInt, LatticeClass, LatticeClass)>,
    /// Witnesses of 2 that are not multiples of exceptional classes.
    pub survivors: Vec<LatticeClass>,
    /// (ξ̃, E) with `E·ξ̃ = 1` for the nsm-positive outcome.
    pub nsm_witness: Option<(LatticeClass, LatticeClass)>,
}

pub fn screen(xi: &LatticeClass, a_max: i64) -> Result<ScreenVerdict> {
    screen_with(xi, a_max, SignConvention::OnesNegative)
}

pub fn screen_with(
    xi: &LatticeClass,
    a_max: i64,
    convention: SignConvention,
) -> Result<ScreenVerdict> {
    let vs = value_set_with(xi, convention)?;
    let two = BigInt::from(2);
    if !vs.values.contains(&two) {
        return Ok(ScreenVerdict {
            outcome: ScreenOutcome::NotRepresentable,
            values: vs.values,
            witnesses_of_two: Vec::new(),
            multiples: Vec::new(),
            survivors: Vec::new(),
            nsm_witness: None,
        });
    }
    let witnesses = witnesses_of_value(xi, &two, convention)?;
    let mut multiples = Vec::new();
    let mut survivors = Vec::new();
    for w in &witnesses {
        match multiple_of_exceptional(w, a_max) {
            Some((m, e)) => multiples.push((m, e, w.clone())),
            None => survivors.push(w.clone()),
        }
    }
    if survivors.is_empty() {
        return Ok(ScreenVerdict {
            outcome: ScreenOutcome::MultipleOfExceptional,
            values: vs.values,
            witnesses_of_two: witnesses,
            multiples,
            survivors,
            nsm_witness: None,
        });
    }
    let catalog = weyl::enumerate_exceptional(xi.k(), a_max);
    let mut nsm_witness = None;
    'outer: for w in &survivors {
        for e in &catalog {
            if e.pair(w).expect("same k") == BigInt::one() {
                nsm_witness = Some((w.clone(), e.clone()));
                break 'outer;
            }
        }
    }
    let outcome = if nsm_witness.is_some() {
        ScreenOutcome::NsmPositive
    } else {
        ScreenOutcome::Inconclusive
    };
    Ok(ScreenVerdict {
        outcome,
        values: vs.values,
        witnesses_of_two: witnesses,
        multiples,
        survivors,
        nsm_witness,
    })
}

/// Representability flag of a catalog row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepFlag {
    /// `N`: not symplectically representable under the forced unit signs.
    NotRepresentable,
    Unknown,
}

/// One row of the shipped −4-class catalog.
#[derive(Debug, Clone)]
pub struct TableEntry {
    pub rel_min_k: usize,
    pub xi: LatticeClass,
    pub sympl_rep: RepFlag,
    pub nsm_positive: bool,
    pub starred: bool,
    pub note: String,
}

/// The catalog shipped with the crate.
pub const BUILTIN_TABLE: &str = include_str!("../data/table1.tsv");

pub fn builtin_table() -> Vec<TableEntry> {
    parse_table(BUILTIN_TABLE).expect("builtin table parses")
}

pub fn parse_table(tsv: &str) -> Result<Vec<TableEntry>> {
    let mut rows = Vec::new();
    for (lineno, line) in tsv.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 6 {
            return Err(Error::Parse(format!(
                "table line {}: expected 6 tab-separated columns, got {}",
                lineno + 1,
                cols.len()
            )));
        }
        let rel_min_k: usize = cols[0]
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("table line {}: bad k: {e}", lineno + 1)))?;
        let xi: LatticeClass = cols[1].parse()?;
        let sympl_rep = match cols[2].trim() {
            "N" => RepFlag::NotRepresentable,
            "-" | "" => RepFlag::Unknown,
            other => return Err(Error::Parse(format!("bad rep flag `{other}`"))),
        };
        let nsm_positive = match cols[3].trim() {
            ">0" => true,
            "-" | "" => false,
            other => return Err(Error::Parse(format!("bad nsm flag `{other}`"))),
        };
        let starred = match cols[4].trim() {
            "*" => true,
            "-" | "" => false,
            other => return Err(Error::Parse(format!("bad star flag `{other}`"))),
        };
        rows.push(TableEntry {
            rel_min_k,
            xi,
            sympl_rep,
            nsm_positive,
            starred,
            note: cols[5].trim().to_string(),
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Pass,
    /// The screen and the row's flag disagree in the one known ambiguous way:
    /// flagged `>0` but every witness of 2 is a multiple of an exceptional
    /// class. Surfaced for human review rather than silently passed.
    Review,
    Fail,
}

impl RowStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowStatus::Pass => "pass",
            RowStatus::Review => "review",
            RowStatus::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RowReport {
    pub index: usize,
    pub entry: TableEntry,
    pub square_ok: bool,
    pub rel_min_k_ok: bool,
    pub normal_form_ok: bool,
    pub outcome: Option<ScreenOutcome>,
    pub status: RowStatus,
    pub detail: String,
}

/// A group relation between catalog rows, found by comparing reduced forms
/// and certified by a replayable word.
#[derive(Debug, Clone)]
pub struct OrbitFinding {
    /// Row indices (0-based into the entry list).
    pub rows: (usize, usize),
    /// The k over which the two representatives were compared (smaller row
    /// padded with zeros).
    pub common_k: usize,
    pub witness: Vec<Move>,
    pub uses_global_sign: bool,
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub rows: Vec<RowReport>,
    pub findings: Vec<OrbitFinding>,
    pub passed: usize,
    pub reviewed: usize,
    pub failed: usize,
}

impl TableReport {
    pub fn has_failures(&self) -> bool {
        self.failed > 0
    }
}

/// Check every row of the catalog against the screen and report per-row
/// pass/review/fail, plus the orbit relations the group reveals between rows.
///
/// Consistency expected of the flags: `N` rows must screen to
/// not-representable or multiple-of-exceptional; `>0` rows must screen to
/// nsm-positive (multiple-of-exceptional is downgraded to a review); rows
/// with neither flag must come out inconclusive.
pub fn verify_table(entries: &[TableEntry], a_max: i64) -> TableReport {
    let mut rows = Vec::new();
    for (index, entry) in entries.iter().enumerate() {
        let square_ok = entry.xi.square() == BigInt::from(-4);
        let rel_min_k_ok = entry.xi.nonzero_count() == entry.rel_min_k;
        let normal_form_ok = entry.xi.is_trivial_normal();
        let mut detail = String::new();
        let (outcome, status) = if !(square_ok && rel_min_k_ok && normal_form_ok) {
            detail = "integrity check failed".to_string();
            (None, RowStatus::Fail)
        } else {
            match screen(&entry.xi, a_max) {
                Err(e) => {
                    detail = format!("screen error: {e}");
                    (None, RowStatus::Fail)
                }
                Ok(verdict) => {
                    let outcome = verdict.outcome;
                    let status = row_status(entry, outcome, &mut detail);
                    (Some(outcome), status)
                }
            }
        };
        rows.push(RowReport {
            index,
            entry: entry.clone(),
            square_ok,
            rel_min_k_ok,
            normal_form_ok,
            outcome,
            status,
            detail,
        });
    }

    let findings = orbit_findings(entries);
    let passed = rows.iter().filter(|r| r.status == RowStatus::Pass).count();
    let reviewed = rows.iter().filter(|r| r.status == RowStatus::Review).count();
    let failed = rows.iter().filter(|r| r.status == RowStatus::Fail).count();
    TableReport {
        rows,
        findings,
        passed,
        reviewed,
        failed,
    }
}

fn row_status(entry: &TableEntry, outcome: ScreenOutcome, detail: &mut String) -> RowStatus {
    match (entry.sympl_rep, entry.nsm_positive) {
        (RepFlag::NotRepresentable, false) => match outcome {
            ScreenOutcome::NotRepresentable => RowStatus::Pass,
            ScreenOutcome::MultipleOfExceptional => {
                *detail = "N via multiple of an exceptional class".to_string();
                RowStatus::Pass
            }
            other => {
                *detail = format!("flagged N but screened {}", other.as_str());
                RowStatus::Fail
            }
        },
        (RepFlag::Unknown, true) => match outcome {
            ScreenOutcome::NsmPositive => RowStatus::Pass,
            ScreenOutcome::MultipleOfExceptional => {
                *detail =
                    "flagged >0 but every witness of 2 is a multiple of an exceptional class; \
                     the class cannot itself be symplectically representable"
                        .to_string();
                RowStatus::Review
            }
            other => {
                *detail = format!("flagged >0 but screened {}", other.as_str());
                RowStatus::Fail
            }
        },
        (RepFlag::Unknown, false) => match outcome {
            ScreenOutcome::Inconclusive => RowStatus::Pass,
            other => {
                *detail = format!("no flags but screened {}", other.as_str());
                RowStatus::Fail
            }
        },
        (RepFlag::NotRepresentable, true) => {
            *detail = "row carries both N and >0".to_string();
            RowStatus::Fail
        }
    }
}

/// Pairwise relations between rows: two representatives are reported when the
/// greedy descents land on the same reduced class (possibly after a global
/// sign), in which case the concatenated descent words certify equivalence.
fn orbit_findings(entries: &[TableEntry]) -> Vec<OrbitFinding> {
    let mut findings = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let common_k = entries[i].xi.k().max(entries[j].xi.k());
            let x = entries[i].xi.pad(common_k).expect("pad up");
            let y = entries[j].xi.pad(common_k).expect("pad up");
            let (rx, wx) = weyl::reduce_with_moves(&x);
            let (ry, wy) = weyl::reduce_with_moves(&y);
            let (tail, uses_global_sign) = if rx == ry {
                (invert_word(&wy), false)
            } else {
                let (rny, wny) = weyl::reduce_with_moves(&y.neg());
                if rx == rny {
                    let mut tail = invert_word(&wny);
                    tail.push(Move::Negate);
                    (tail, true)
                } else {
                    continue;
                }
            };
            let mut witness = wx.clone();
            witness.extend(tail);
            debug_assert_eq!(weyl::apply_moves(&x, &witness).unwrap(), y);
            findings.push(OrbitFinding {
                rows: (i, j),
                common_k,
                witness,
                uses_global_sign,
            });
        }
    }
    findings
}

fn invert_word(word: &[Move]) -> Vec<Move> {
    word.iter().rev().map(Move::inverse).collect()
}

/// Bounded BFS confirmation of a finding; exposed so callers can replay a
/// reported relation through the orbit machinery itself.
pub fn confirm_finding(
    entries: &[TableEntry],
    finding: &OrbitFinding,
    cap: i64,
) -> Result<OrbitStatus> {
    let (i, j) = finding.rows;
    let x = entries[i].xi.pad(finding.common_k)?;
    let y = entries[j].xi.pad(finding.common_k)?;
    Ok(weyl::orbit_equivalent(&x, &y, cap, true)?.status)
}

//! Error detection and correction for 2×2 codes (`p = 1`).
//!
//! A damaged code matrix is repaired by hypothesizing which entries were
//! hit and solving the determinant relation
//! `e1·e4 − e2·e3 = (−1)^{n(p+2)}·det(M)` for them. Every repaired matrix
//! must also have both row ratios strictly inside `ratio_interval(n)` and
//! decode to a message with entries in `[1, max_entry]`.
//!
//! Single errors have closed forms. Double and triple errors are solved by
//! bounded enumeration: an unknown whose row partner is trusted is confined
//! to the row's ratio interval, and a row with both entries unknown is a
//! linear Diophantine equation walked over its solution family.
//!
//! Positions are numbered 1..=4 row-major: `[[e1, e2], [e3, e4]]`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::codec::{decode, verify_det_relation, CodePackage, MessageMatrix};
use crate::diophantine::{ceil_div, solve_linear, ParamRange};
use crate::error::{Error, Result};
use crate::matrix::{determinant, g_matrix, unimodular_inverse, IntMatrix};
use crate::sequences::{ratio_interval, RatioInterval};

/// Largest value of the 29-symbol character table.
pub const DEFAULT_MAX_ENTRY: u64 = 28;
/// Largest number of integer values tried for one unknown.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Bounds that keep the double/triple searches finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest message entry a candidate may decode to.
    pub max_entry: BigInt,
    pub budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_entry: BigInt::from(DEFAULT_MAX_ENTRY), budget: DEFAULT_BUDGET }
    }
}

impl SearchLimits {
    pub fn with_max_entry(max_entry: impl Into<BigInt>) -> Self {
        SearchLimits { max_entry: max_entry.into(), ..SearchLimits::default() }
    }
}

/// A non-empty set of damaged positions in `{1, 2, 3, 4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ErrorPattern(u8);

impl ErrorPattern {
    pub fn new(positions: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        for &pos in positions {
            if !(1..=4).contains(&pos) {
                return Err(Error::Domain("error positions are 1..=4"));
            }
            mask |= 1 << (pos - 1);
        }
        ErrorPattern::from_mask(mask).ok_or(Error::Domain("error pattern must be non-empty"))
    }

    pub fn from_mask(mask: u8) -> Option<Self> {
        (mask != 0 && mask < 16).then_some(ErrorPattern(mask))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn contains(self, position: usize) -> bool {
        (1..=4).contains(&position) && self.0 & (1 << (position - 1)) != 0
    }

    pub fn positions(self) -> impl Iterator<Item = usize> {
        (1..=4).filter(move |&p| self.contains(p))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Patterns with `size` positions, in lexicographic order.
    pub fn of_size(size: usize) -> Vec<ErrorPattern> {
        let mut out: Vec<ErrorPattern> =
            (1u8..16).filter(|m| m.count_ones() as usize == size).map(ErrorPattern).collect();
        out.sort_by_key(|p| {
            let mut key = [0usize; 4];
            for (slot, pos) in key.iter_mut().zip(p.positions()) {
                *slot = pos;
            }
            key
        });
        out
    }

    /// All 15 patterns: singles, doubles, triples, then the full pattern.
    pub fn all() -> Vec<ErrorPattern> {
        (1..=4).flat_map(ErrorPattern::of_size).collect()
    }
}

impl fmt::Display for ErrorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, pos) in self.positions().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{pos}")?;
        }
        f.write_str("}")
    }
}

/// What a candidate assumes was damaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fault {
    Entries(ErrorPattern),
    /// `E` arrived intact but the transmitted `det(M)` did not.
    CheckingElement,
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fault::Entries(p) => write!(f, "{p}"),
            Fault::CheckingElement => f.write_str("checking-element"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub fault: Fault,
    /// The repaired code matrix.
    pub code: IntMatrix,
    /// The checking element the candidate is consistent with.
    pub det_m: BigInt,
    pub message: IntMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorrectionStatus {
    Clean,
    Corrected,
    Ambiguous,
    Uncorrectable,
}

impl fmt::Display for CorrectionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorrectionStatus::Clean => "Clean",
            CorrectionStatus::Corrected => "Corrected",
            CorrectionStatus::Ambiguous => "Ambiguous",
            CorrectionStatus::Uncorrectable => "Uncorrectable",
        })
    }
}

/// Diagnostics collected while searching.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Note {
    /// A single-error closed form had a zero denominator.
    ZeroDenominator { position: usize },
    /// The row assumed intact fails its own ratio or positivity check.
    TrustedRowRejected { pattern: ErrorPattern },
    /// More than `budget` values for one unknown; the pattern was abandoned.
    BudgetExceeded { pattern: ErrorPattern },
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Note::ZeroDenominator { position } => {
                write!(f, "single hypothesis {position} skipped: zero denominator")
            }
            Note::TrustedRowRejected { pattern } => {
                write!(f, "pattern {pattern} rejected: trusted row fails ratio check")
            }
            Note::BudgetExceeded { pattern } => {
                write!(f, "pattern {pattern} abandoned: search-budget exceeded")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionResult {
    pub status: CorrectionStatus,
    pub message: Option<IntMatrix>,
    pub fault: Option<Fault>,
    pub candidates: Vec<Candidate>,
    pub notes: Vec<Note>,
}

impl CorrectionResult {
    fn from_candidates(candidates: Vec<Candidate>, notes: Vec<Note>) -> Self {
        let (status, message, fault) = match candidates.as_slice() {
            [] => (CorrectionStatus::Uncorrectable, None, None),
            [only] => (CorrectionStatus::Corrected, Some(only.message.clone()), Some(only.fault)),
            _ => (CorrectionStatus::Ambiguous, None, None),
        };
        CorrectionResult { status, message, fault, candidates, notes }
    }

    /// Whether `truth` is the reported message or one of the candidates.
    pub fn recovers(&self, truth: &IntMatrix) -> bool {
        self.message.as_ref() == Some(truth) || self.candidates.iter().any(|c| c.message == *truth)
    }
}

/// Everything the solvers need about one received 2×2 package.
struct Received {
    e: [BigInt; 4],
    det_m: BigInt,
    /// Required `det(E)`.
    target: BigInt,
    interval: RatioInterval,
    g_inv: IntMatrix,
    /// Largest code value per column that decodes inside `[1, max_entry]`.
    col_max: [BigInt; 2],
}

impl Received {
    fn new(pkg: &CodePackage, limits: &SearchLimits) -> Result<Self> {
        if pkg.p != 1 {
            return Err(Error::Unsupported("correction is defined for p = 1 only"));
        }
        let g = g_matrix(1, pkg.n)?;
        let e = [pkg.e[(0, 0)].clone(), pkg.e[(0, 1)].clone(), pkg.e[(1, 0)].clone(), pkg.e[(1, 1)].clone()];
        let col_max = [&limits.max_entry * (&g[(0, 0)] + &g[(1, 0)]), &limits.max_entry * (&g[(0, 1)] + &g[(1, 1)])];
        Ok(Received {
            e,

            det_m: pkg.det_m.clone(),
            target: pkg.expected_code_det(),
            interval: ratio_interval(pkg.n)?,
            g_inv: unimodular_inverse(&g)?,
            col_max,
        })
    }

    fn row_ok(&self, left: &BigInt, right: &BigInt) -> bool {
        left.is_positive() && right.is_positive() && self.interval.contains_ratio(left, right).unwrap_or(false)
    }

    fn decode_row(&self, left: &BigInt, right: &BigInt) -> [BigInt; 2] {
        let gi = &self.g_inv;
        [left * &gi[(0, 0)] + right * &gi[(1, 0)], left * &gi[(0, 1)] + right * &gi[(1, 1)]]
    }

    /// Filters a fully assembled code matrix; returns its message on success.
    fn admit(&self, code: &[BigInt; 4], max_entry: Option<&BigInt>) -> Option<IntMatrix> {
        if !self.row_ok(&code[0], &code[1]) || !self.row_ok(&code[2], &code[3]) {
            return None;
        }
        if &code[0] * &code[3] - &code[1] * &code[2] != self.target {
            return None;
        }
        self.message_within(code, max_entry)
    }

    fn message_within(&self, code: &[BigInt; 4], max_entry: Option<&BigInt>) -> Option<IntMatrix> {
        let [m1, m2] = self.decode_row(&code[0], &code[1]);
        let [m3, m4] = self.decode_row(&code[2], &code[3]);
        let entries = alloc::vec![m1, m2, m3, m4];
        let in_range = |m: &BigInt| m.is_positive() && max_entry.is_none_or(|cap| m <= cap);
        if !entries.iter().all(in_range) {
            return None;
        }
        IntMatrix::new(2, 2, entries).ok()
    }

    fn candidate(&self, fault: Fault, code: [BigInt; 4], message: IntMatrix) -> Candidate {
        Candidate { fault, code: IntMatrix::new(2, 2, code.into()).expect("2x2"), det_m: self.det_m.clone(), message }
    }

    /// Integer values for the unknown at `col` of a row whose other entry is
    /// `known`, such that the row ratio lies strictly inside the interval.
    fn bracket(&self, col: usize, known: &BigInt, budget: u64) -> Search<(BigInt, BigInt)> {
        if !known.is_positive() {
            return Search::Rejected;
        }
        let lo = self.interval.lo();
        let hi = self.interval.hi();
        let (min, max) = if col == 0 {
            // lo < x / known < hi
            let min = (lo.numer() * known).div_floor(lo.denom()) + 1;
            let max = match hi {
                Some(hi) => ceil_div(&(hi.numer() * known), hi.denom()) - 1,
                None => self.col_max[0].clone(),
            };
            (min, max.min(self.col_max[0].clone()))
        } else {
            // lo < known / y < hi
            let max: BigInt = ceil_div(&(known * lo.denom()), lo.numer()) - 1;
            let min = match hi {
                Some(hi) => (known * hi.denom()).div_floor(hi.numer()) + 1,
                None => BigInt::from(1),
            };
            (min.max(BigInt::from(1)), max.min(self.col_max[1].clone()))
        };
        if min > max {
            return Search::Found(Vec::new());
        }
        if &max - &min + 1 > BigInt::from(budget) {
            return Search::OverBudget;
        }
        Search::Found(alloc::vec![(min, max)])
    }

    /// Positive solutions `(left, right)` of the free row given the other
    /// row, inside the ratio interval and the column caps.
    fn free_row(&self, free_row: usize, anchor: [&BigInt; 2], budget: u64) -> Search<(BigInt, BigInt)> {
        if !self.row_ok(anchor[0], anchor[1]) {
            return Search::Rejected;
        }
        // free row 0: x3·x0 − x2·x1 = D   (u = x0, v = x1)
        // free row 1: x0·x3 − x1·x2 = D   (u = x3, v = x2)
        let (a, b, u_cap, v_cap) = if free_row == 0 {
            (anchor[1], anchor[0], &self.col_max[0], &self.col_max[1])
        } else {
            (anchor[0], anchor[1], &self.col_max[1], &self.col_max[0])
        };
        let Some(family) = solve_linear(a, b, &self.target) else {
            return Search::Found(Vec::new());
        };
        let one = BigInt::from(1);
        let range = family.range_within((&one, u_cap), (&one, v_cap));
        let (k_lo, k_hi) = match range {
            ParamRange::Empty => return Search::Found(Vec::new()),
            ParamRange::Unbounded => return Search::OverBudget,
            ParamRange::Bounded { lo, hi } => (lo, hi),
        };
        if &k_hi - &k_lo + 1 > BigInt::from(budget) {
            return Search::OverBudget;
        }
        let mut out = Vec::new();
        let mut k = k_lo;
        while k <= k_hi {
            let (u, v) = family.at(&k);
            let (left, right) = if free_row == 0 { (u, v) } else { (v, u) };
            if self.row_ok(&left, &right) {
                out.push((left, right));
            }
            k += 1;
        }
        Search::Found(out)
    }
}

enum Search<T> {
    Found(Vec<T>),
    Rejected,
    OverBudget,
}

/// Solves the determinant relation for the entry at `idx` (0-based) given
/// the other three. `Err` on a zero denominator, `Ok(None)` when inexact.
fn solve_entry(x: &[BigInt; 4], idx: usize, target: &BigInt) -> core::result::Result<Option<BigInt>, ()> {
    let (num, den) = match idx {
        0 => (target + &x[1] * &x[2], &x[3]),
        1 => (&x[0] * &x[3] - target, &x[2]),
        2 => (&x[0] * &x[3] - target, &x[1]),
        _ => (target + &x[1] * &x[2], &x[0]),
    };
    if den.is_zero() {
        return Err(());
    }
    let (q, r) = num.div_rem(den);
    Ok(r.is_zero().then_some(q))
}

/// `true` iff `det(E)` matches the checking element (no error signature).
pub fn detect(pkg: &CodePackage) -> Result<bool> {
    if pkg.p != 1 {
        return Err(Error::Unsupported("detection is defined for p = 1 only"));
    }
    verify_det_relation(pkg)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SingleHypotheses {
    /// `(position, repaired value)` pairs that pass every filter.
    pub survivors: Vec<(usize, BigInt)>,
    /// Positions whose closed form had a zero denominator.
    pub skipped: Vec<usize>,
}

/// Closed-form repair of each single position:
/// `t1 = (D + e2·e3)/e4`, `t2 = (e1·e4 − D)/e3`, `t3 = (e1·e4 − D)/e2`,
/// `t4 = (D + e2·e3)/e1` with `D = (−1)^{n(p+2)}·det(M)`.
///
/// A value survives if it is an exact positive integer, both rows of the
/// repaired matrix pass the ratio check and the message is all positive.
pub fn hypothesize_single(pkg: &CodePackage) -> Result<SingleHypotheses> {
    let rx = Received::new(pkg, &SearchLimits::default())?;
    let mut out = SingleHypotheses::default();
    for idx in 0..4 {
        match solve_entry(&rx.e, idx, &rx.target) {
            Err(()) => out.skipped.push(idx + 1),
            Ok(None) => {}
            Ok(Some(t)) => {
                let mut code = rx.e.clone();
                code[idx] = t.clone();
                if t.is_positive() && rx.admit(&code, None).is_some() {
                    out.survivors.push((idx + 1, t));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SameRowOutcome {
    /// `(left, right)` entries of the repaired row, in increasing search order.
    Solutions(Vec<(BigInt, BigInt)>),
    TrustedRowRejected,
    BudgetExceeded,
}

/// Both entries of `row` (1 or 2) damaged: solves
/// `t1·e4 − t2·e3 = D` (row 1) or `e1·t4 − e2·t3 = D` (row 2) over the
/// positive integers, keeping solutions whose ratio lies strictly inside
/// the interval and whose decoded row stays within `limits.max_entry`.
pub fn solve_double_same_row(pkg: &CodePackage, row: usize, limits: &SearchLimits) -> Result<SameRowOutcome> {
    if !(1..=2).contains(&row) {
        return Err(Error::Domain("row must be 1 or 2"));
    }
    let rx = Received::new(pkg, limits)?;
    let free = row - 1;
    let anchor = if free == 0 { [&rx.e[2], &rx.e[3]] } else { [&rx.e[0], &rx.e[1]] };
    Ok(match rx.free_row(free, anchor, limits.budget) {
        Search::Rejected => SameRowOutcome::TrustedRowRejected,
        Search::OverBudget => SameRowOutcome::BudgetExceeded,
        Search::Found(rows) => SameRowOutcome::Solutions(
            rows.into_iter()
                .filter(|(l, r)| rx.decode_row(l, r).iter().all(|m| m.is_positive() && *m <= limits.max_entry))
                .collect(),
        ),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PatternSolution {
    pub candidates: Vec<Candidate>,
    pub notes: Vec<Note>,
}

/// All repairs that change exactly the positions in `pattern` (1 to 3 of
/// them) and pass every filter, including `limits.max_entry`.
pub fn solve_pattern(pkg: &CodePackage, pattern: ErrorPattern, limits: &SearchLimits) -> Result<PatternSolution> {
    if pattern.len() == 4 {
        return Err(Error::Unsupported("four damaged entries are never hypothesized"));
    }
    let rx = Received::new(pkg, limits)?;
    let unknown = |idx: usize| pattern.contains(idx + 1);
    let row_unknowns = |row: usize| (0..2).filter(|c| unknown(2 * row + c)).count();
    let (anchor, free) = if row_unknowns(0) <= row_unknowns(1) { (0, 1) } else { (1, 0) };

    let mut out = PatternSolution::default();
    let abort = |out: &mut PatternSolution, note: Note| {
        out.candidates.clear();
        out.notes.push(note);
    };

    // Values the anchor row may take.
    let anchor_rows: Vec<[BigInt; 2]> = match row_unknowns(anchor) {
        0 => {
            let row = [rx.e[2 * anchor].clone(), rx.e[2 * anchor + 1].clone()];
            if !rx.row_ok(&row[0], &row[1]) {
                abort(&mut out, Note::TrustedRowRejected { pattern });
                return Ok(out);
            }
            alloc::vec![row]
        }
        _ => {
            let col = if unknown(2 * anchor) { 0 } else { 1 };
            let known = &rx.e[2 * anchor + (1 - col)];
            let received = &rx.e[2 * anchor + col];
            match rx.bracket(col, known, limits.budget) {
                Search::Rejected => {
                    abort(&mut out, Note::TrustedRowRejected { pattern });
                    return Ok(out);
                }
                Search::OverBudget => {
                    abort(&mut out, Note::BudgetExceeded { pattern });
                    return Ok(out);
                }
                Search::Found(ranges) => {
                    let mut rows = Vec::new();
                    for (lo, hi) in ranges {
                        let mut x = lo;
                        while x <= hi {
                            if x != *received {
                                rows.push(if col == 0 {
                                    [x.clone(), known.clone()]
                                } else {
                                    [known.clone(), x.clone()]
                                });
                            }
                            x += 1;
                        }
                    }
                    rows
                }
            }
        }
    };

    for anchor_row in anchor_rows {
        let mut base = rx.e.clone();
        base[2 * anchor] = anchor_row[0].clone();
        base[2 * anchor + 1] = anchor_row[1].clone();
        let mut codes: Vec<[BigInt; 4]> = Vec::new();
        if row_unknowns(free) == 1 {
            let idx = if unknown(2 * free) { 2 * free } else { 2 * free + 1 };
            if let Ok(Some(t)) = solve_entry(&base, idx, &rx.target) {
                let mut code = base.clone();
                code[idx] = t;
                codes.push(code);
            }
        } else {
            match rx.free_row(free, [&anchor_row[0], &anchor_row[1]], limits.budget) {
                Search::Rejected => continue,
                Search::OverBudget => {
                    abort(&mut out, Note::BudgetExceeded { pattern });
                    return Ok(out);
                }
                Search::Found(rows) => {
                    for (left, right) in rows {
                        let mut code = base.clone();
                        code[2 * free] = left;
                        code[2 * free + 1] = right;
                        codes.push(code);
                    }
                }
            }
        }
        for code in codes {
            if pattern.positions().any(|p| code[p - 1] == rx.e[p - 1]) {
                continue;
            }
            if let Some(message) = rx.admit(&code, Some(&limits.max_entry)) {
                out.candidates.push(rx.candidate(Fault::Entries(pattern), code, message));
            }
        }
    }
    Ok(out)
}

/// Runs the correction cascade with the default limits.
pub fn correct(pkg: &CodePackage) -> Result<CorrectionResult> {
    correct_with(pkg, &SearchLimits::default())
}

/// The correction cascade:
///
/// 1. the determinant relation holds: `Clean`;
/// 2. exactly one single-entry repair survives: `Corrected`;
/// 3. otherwise every single, double and triple repair is collected
///    (deduplicated by message, in pattern order). One candidate is
///    `Corrected`, several are `Ambiguous`;
/// 4. nothing survives: if `E` itself passes the ratio checks the checking
///    element is blamed, else `Uncorrectable`.
pub fn correct_with(pkg: &CodePackage, limits: &SearchLimits) -> Result<CorrectionResult> {
    let rx = Received::new(pkg, limits)?;
    if verify_det_relation(pkg)? {
        return Ok(CorrectionResult {
            status: CorrectionStatus::Clean,
            message: Some(decode(pkg)?),
            fault: None,
            candidates: Vec::new(),
            notes: Vec::new(),
        });
    }

    let singles = hypothesize_single(pkg)?;
    let mut notes: Vec<Note> = singles.skipped.iter().map(|&position| Note::ZeroDenominator { position }).collect();
    let mut candidates: Vec<Candidate> = Vec::new();
    for (position, value) in singles.survivors {
        let mut code = rx.e.clone();
        code[position - 1] = value;
        if let Some(message) = rx.admit(&code, Some(&limits.max_entry)) {
            let pattern = ErrorPattern::new(&[position])?;
            candidates.push(rx.candidate(Fault::Entries(pattern), code, message));
        }
    }
    if candidates.len() == 1 {
        return Ok(CorrectionResult::from_candidates(candidates, notes));
    }

    for pattern in ErrorPattern::of_size(2).into_iter().chain(ErrorPattern::of_size(3)) {
        let solved = solve_pattern(pkg, pattern, limits)?;
        notes.extend(solved.notes);
        for c in solved.candidates {
            if !candidates.iter().any(|seen| seen.message == c.message) {
                candidates.push(c);
            }
        }
    }

    if candidates.is_empty() && rx.row_ok(&rx.e[0], &rx.e[1]) && rx.row_ok(&rx.e[2], &rx.e[3]) {
        if let Some(message) = rx.message_within(&rx.e, Some(&limits.max_entry)) {
            let det_m = determinant(&message)?;
            candidates.push(Candidate { fault: Fault::CheckingElement, code: pkg.e.clone(), det_m, message });
        }
    }
    Ok(CorrectionResult::from_candidates(candidates, notes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The original message is the correction or among the candidates.
    Recovered,
    Uncorrectable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbilityRow {
    pub pattern: ErrorPattern,
    pub status: CorrectionStatus,
    pub candidates: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbilityReport {
    pub rows: Vec<AbilityRow>,
}

impl AbilityReport {
    pub fn recovered(&self) -> usize {
        self.rows.iter().filter(|r| r.verdict == Verdict::Recovered).count()
    }

    /// `(recovered, total)` over the 15 non-empty patterns.
    pub fn score(&self) -> (usize, usize) {
        (self.recovered(), self.rows.len())
    }

    pub fn row(&self, pattern: ErrorPattern) -> Option<&AbilityRow> {
        self.rows.iter().find(|r| r.pattern == pattern)
    }
}

/// Damages every non-empty subset of positions of `encode(m, 1, n)` with
/// `oracle(position, value)` and runs the cascade on each.
pub fn correction_ability_enumeration<F>(
    m: &MessageMatrix,
    n: u32,
    oracle: F,
    limits: &SearchLimits,
) -> Result<AbilityReport>
where
    F: Fn(usize, &BigInt) -> BigInt,
{
    let pkg = crate::codec::encode(m, 1, n)?;
    let truth = m.as_matrix();
    let mut rows = Vec::with_capacity(15);
    for pattern in ErrorPattern::all() {
        let mut damaged = pkg.clone();
        for pos in pattern.positions() {
            let (r, c) = ((pos - 1) / 2, (pos - 1) % 2);
            let value = oracle(pos, &pkg.e[(r, c)]);
            damaged.e.set(r, c, value);
        }
        let result = correct_with(&damaged, limits)?;
        let verdict = if result.recovers(truth) { Verdict::Recovered } else { Verdict::Uncorrectable };
        rows.push(AbilityRow { pattern, status: result.status, candidates: result.candidates.len(), verdict });
    }
    Ok(AbilityReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::encode;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn pkg(e: &[&[i64]], n: u32, det: i64) -> CodePackage {
        CodePackage::new(mat(e), 1, n, int(det)).unwrap()
    }

    fn exm_pkg() -> CodePackage {
        pkg(&[&[221, 92], &[158, 64]], 3, 392)
    }

    #[test]
    fn pattern_basics() {
        assert!(ErrorPattern::new(&[]).is_err());
        assert!(ErrorPattern::new(&[5]).is_err());
        let p = ErrorPattern::new(&[3, 1]).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(alloc::format!("{p}"), "{1,3}");
        let all = ErrorPattern::all();
        assert_eq!(all.len(), 15);
        let names: Vec<_> = ErrorPattern::of_size(2).iter().map(|p| alloc::format!("{p}")).collect();
        assert_eq!(names, ["{1,2}", "{1,3}", "{1,4}", "{2,3}", "{2,4}", "{3,4}"]);
        let names: Vec<_> = ErrorPattern::of_size(3).iter().map(|p| alloc::format!("{p}")).collect();
        assert_eq!(names, ["{1,2,3}", "{1,2,4}", "{1,3,4}", "{2,3,4}"]);
    }

    #[test]
    fn detect_cases() {
        assert!(detect(&exm_pkg()).unwrap());
        assert!(!detect(&pkg(&[&[200, 92], &[158, 64]], 3, 392)).unwrap());
        assert!(detect(&pkg(&[&[0, 0], &[0, 0]], 3, 0)).unwrap());
        let p2 = CodePackage::new(IntMatrix::identity(3), 2, 1, int(1)).unwrap();
        assert!(matches!(detect(&p2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn single_hypotheses_exm() {
        // t1 = (−392 + 92·158)/64 = 221; t2 = 13192/158, t3 = 13192/92,
        // t4 = 14144/200 are all fractional.
        let h = hypothesize_single(&pkg(&[&[200, 92], &[158, 64]], 3, 392)).unwrap();
        assert_eq!(h.survivors, [(1, int(221))]);
        assert!(h.skipped.is_empty());
    }

    #[test]
    fn single_hypotheses_on_clean_package_return_existing_values() {
        let h = hypothesize_single(&exm_pkg()).unwrap();
        assert_eq!(h.survivors, [(1, int(221)), (2, int(92)), (3, int(158)), (4, int(64))]);
    }

    #[test]
    fn single_hypotheses_zero_denominator() {
        let h = hypothesize_single(&pkg(&[&[200, 92], &[158, 0]], 3, 392)).unwrap();
        assert_eq!(h.skipped, [1]);
    }

    /// Found by brute force over messages in [1,28]^4 with n = 3 and single
    /// offsets in [−50, 50]: M = [[1,1],[1,1]] (det 0), e1 += 17.
    #[test]
    fn single_hypotheses_collision() {
        let m = MessageMatrix::new(mat(&[&[1, 1], &[1, 1]])).unwrap();
        let mut p = encode(&m, 1, 3).unwrap();
        assert_eq!(p.e, mat(&[&[17, 7], &[17, 7]]));
        p.e.set(0, 0, int(34));
        let h = hypothesize_single(&p).unwrap();
        assert_eq!(h.survivors, [(1, int(17)), (2, int(14))]);
        let result = correct(&p).unwrap();
        assert_eq!(result.status, CorrectionStatus::Ambiguous);
        assert!(result.recovers(m.as_matrix()));
    }

    #[test]
    fn same_row_double_recovers_row() {
        let mut p = exm_pkg();
        p.e.set(0, 0, int(300));
        p.e.set(0, 1, int(7));
        let SameRowOutcome::Solutions(sols) = solve_double_same_row(&p, 1, &SearchLimits::default()).unwrap() else {
            panic!("expected solutions");
        };
        assert!(sols.contains(&(int(221), int(92))));
        for (t1, t2) in &sols {
            assert_eq!(t1 * int(64) - t2 * int(158), int(-392));
            assert!(ratio_interval(3).unwrap().contains_ratio(t1, t2).unwrap());
        }
    }

    #[test]
    fn same_row_double_rejects_bad_trusted_row() {
        let p = pkg(&[&[221, 92], &[100, 64]], 3, 392);
        assert_eq!(solve_double_same_row(&p, 1, &SearchLimits::default()).unwrap(), SameRowOutcome::TrustedRowRejected);
        assert!(solve_double_same_row(&p, 3, &SearchLimits::default()).is_err());
    }

    #[test]
    fn same_row_double_homogeneous() {
        // det(M) = 0: solutions are multiples of the trusted row's primitive ratio.
        let m = MessageMatrix::new(mat(&[&[2, 4], &[1, 2]])).unwrap();
        let p = encode(&m, 1, 3).unwrap();
        let SameRowOutcome::Solutions(sols) = solve_double_same_row(&p, 1, &SearchLimits::default()).unwrap() else {
            panic!("expected solutions");
        };
        // row 2 of E is (22, 9), coprime; row-1 solutions are k·(22, 9) with k·(1,2) ≤ 28
        let expected: Vec<_> = (1..=14).map(|k| (int(22 * k), int(9 * k))).collect();
        assert_eq!(sols, expected);
    }

    #[test]
    fn same_row_double_unbounded_interval_gives_several() {
        // n = 1: the interval is (2, ∞) and G = [[2,1],[1,0]], so e2 = m1.
        let m = MessageMatrix::new(mat(&[&[3, 2], &[1, 1]])).unwrap();
        let p = encode(&m, 1, 1).unwrap();
        let SameRowOutcome::Solutions(sols) = solve_double_same_row(&p, 1, &SearchLimits::default()).unwrap() else {
            panic!("expected solutions");
        };
        // m1·1 − m2·1 = 1 → (m1, m2) = (k+1, k), k = 1..=27
        assert_eq!(sols.len(), 27);
        assert!(sols.contains(&(int(8), int(3))));
    }

    #[test]
    fn same_row_budget() {
        let mut p = exm_pkg();
        p.e.set(0, 0, int(1));
        let limits = SearchLimits { max_entry: int(10_000_000), budget: 10 };
        assert_eq!(solve_double_same_row(&p, 1, &limits).unwrap(), SameRowOutcome::BudgetExceeded);
    }

    #[test]
    fn solve_pattern_agrees_with_closed_form_for_singles() {
        let m = MessageMatrix::new(mat(&[&[18, 1], &[4, 22]])).unwrap();
        let clean = encode(&m, 1, 3).unwrap();
        for pos in 1..=4 {
            for delta in [-9i64, -1, 3, 40] {
                let mut p = clean.clone();
                let (r, c) = ((pos - 1) / 2, (pos - 1) % 2);
                let v = &p.e[(r, c)] + delta;
                p.e.set(r, c, v);
                let pattern = ErrorPattern::new(&[pos]).unwrap();
                let generic = solve_pattern(&p, pattern, &SearchLimits::default()).unwrap();
                let closed = hypothesize_single(&p).unwrap();
                let closed_here: Vec<_> = closed.survivors.iter().filter(|(q, _)| *q == pos).collect();
                assert_eq!(generic.candidates.len(), closed_here.len(), "pos={pos} delta={delta}");
                assert!(generic.candidates.iter().any(|c| c.message == *m.as_matrix()));
            }
        }
    }

    #[test]
    fn four_error_pattern_is_not_searched() {
        let p = exm_pkg();
        let all = ErrorPattern::new(&[1, 2, 3, 4]).unwrap();
        assert!(matches!(solve_pattern(&p, all, &SearchLimits::default()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn correct_cascade_examples() {
        let r = correct(&pkg(&[&[200, 92], &[158, 64]], 3, 392)).unwrap();
        assert_eq!(r.status, CorrectionStatus::Corrected);
        assert_eq!(r.fault, Some(Fault::Entries(ErrorPattern::new(&[1]).unwrap())));
        assert_eq!(r.message, Some(mat(&[&[18, 1], &[4, 22]])));
        assert_eq!(r.candidates.len(), 1);

        let r = correct(&exm_pkg()).unwrap();
        assert_eq!(r.status, CorrectionStatus::Clean);
        assert!(r.candidates.is_empty());
        assert_eq!(r.message, Some(mat(&[&[18, 1], &[4, 22]])));

        // all four entries replaced: no hypothesis survives
        let r = correct(&pkg(&[&[1, 1], &[1, 1]], 3, 392)).unwrap();
        assert_eq!(r.status, CorrectionStatus::Uncorrectable);
        assert!(r.message.is_none());
        assert!(r.candidates.is_empty());
    }

    #[test]
    fn correct_checking_element_error() {
        // E intact, det(M) off by one. With M = [[2,28],[27,3]] no entry repair
        // decodes inside [1, 28], so the checking element takes the blame.
        let m = MessageMatrix::new(mat(&[&[2, 28], &[27, 3]])).unwrap();
        let mut p = encode(&m, 1, 3).unwrap();
        assert_eq!(p.det_m, int(-750));
        p.det_m = int(-749);
        let r = correct(&p).unwrap();
        assert_eq!(r.status, CorrectionStatus::Corrected);
        assert_eq!(r.fault, Some(Fault::CheckingElement));
        assert_eq!(r.message.as_ref(), Some(m.as_matrix()));
        assert_eq!(r.candidates[0].det_m, int(-750));
    }

    #[test]
    fn checking_element_damage_usually_has_entry_explanations() {
        let r = correct(&pkg(&[&[221, 92], &[158, 64]], 3, 391)).unwrap();
        assert_eq!(r.status, CorrectionStatus::Ambiguous);
        assert!(r.candidates.iter().all(|c| c.fault != Fault::CheckingElement));
    }

    fn candidates_after_shift(m: &MessageMatrix, n: u32, pattern: ErrorPattern, delta: i64) -> usize {
        let mut p = encode(m, 1, n).unwrap();
        for pos in pattern.positions() {
            let (r, c) = ((pos - 1) / 2, (pos - 1) % 2);
            let v = &p.e[(r, c)] + delta;
            p.e.set(r, c, v);
        }
        correct(&p).unwrap().candidates.len()
    }

    /// The intervals nest as n grows, but the candidate count does not
    /// follow: the code entries grow with n and so does the search box.
    #[test]
    fn larger_n_can_increase_ambiguity() {
        for n in 1..12 {
            let outer = ratio_interval(n).unwrap();
            let inner = ratio_interval(n + 1).unwrap();
            assert!(inner.lo() >= outer.lo());
            if let Some(hi) = outer.hi() {
                assert!(inner.hi().unwrap() <= hi);
            }
        }
        let m = MessageMatrix::new(mat(&[&[1, 1], &[3, 2]])).unwrap();
        let pattern = ErrorPattern::new(&[3, 4]).unwrap();
        let counts: Vec<usize> = [3, 5, 7, 9].iter().map(|&n| candidates_after_shift(&m, n, pattern, 7)).collect();
        assert_eq!(counts, [1, 33, 27, 27]);
    }

    /// A double error whose damage is also explained by exactly one single
    /// repair: the cascade stops at the single and reports the wrong message.
    #[test]
    fn unique_single_can_mask_a_double_error() {
        let m = MessageMatrix::new(mat(&[&[1, 7], &[1, 15]])).unwrap();
        let mut p = encode(&m, 1, 3).unwrap();
        assert_eq!(p.e, mat(&[&[47, 19], &[87, 35]]));
        p.e.set(0, 0, int(44));
        p.e.set(0, 1, int(18));
        let r = correct(&p).unwrap();
        assert_eq!(r.status, CorrectionStatus::Corrected);
        assert_eq!(r.fault, Some(Fault::Entries(ErrorPattern::new(&[3]).unwrap())));
        assert_eq!(r.message, Some(mat(&[&[2, 4], &[3, 10]])));
        // the true repair is still found by the double solver
        let solved = solve_pattern(&p, ErrorPattern::new(&[1, 2]).unwrap(), &SearchLimits::default()).unwrap();
        assert!(solved.candidates.iter().any(|c| c.message == *m.as_matrix()));
    }

    #[test]
    fn correct_requires_p1() {
        let p = CodePackage::new(IntMatrix::identity(3), 2, 1, int(1)).unwrap();
        assert!(matches!(correct(&p), Err(Error::Unsupported(_))));
    }

    #[test]
    fn ability_enumeration_exm() {
        let m = MessageMatrix::new(mat(&[&[18, 1], &[4, 22]])).unwrap();
        let report = correction_ability_enumeration(&m, 3, |_, v| v + 7, &SearchLimits::default()).unwrap();
        assert_eq!(report.score(), (14, 15));
        let single = report.row(ErrorPattern::new(&[1]).unwrap()).unwrap();
        assert_eq!(single.verdict, Verdict::Recovered);
        assert_eq!(single.status, CorrectionStatus::Corrected);
        let four = report.row(ErrorPattern::new(&[1, 2, 3, 4]).unwrap()).unwrap();
        assert_eq!(four.verdict, Verdict::Uncorrectable);
    }
}

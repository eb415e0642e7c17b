//! Ground truth by sorting the orbit, and the verification harness that
//! checks the inductive and closed-form constructions against it.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::error::{GapError, Result};
use crate::gap::{CircleConfig, GapKind, Orbit, PointIndex};
use crate::numeric::{frac_point, Angle, FieldValue};

/// Default cap on `N` for the quadratic-cost lemma checks.
pub const DEFAULT_MAX_LEMMA_N: usize = 4096;

/// Orbit points in increasing position, starting with point 0 at 0.
#[derive(Clone, Debug)]
pub struct SortedOrbit {
    entries: Vec<(PointIndex, FieldValue)>,
}

impl SortedOrbit {
    pub fn new(cfg: &CircleConfig) -> Result<Self> {
        let mut entries: Vec<(PointIndex, FieldValue)> = (0..cfg.n_points())
            .map(|n| (PointIndex(n), frac_point(cfg.alpha(), n as u64)))
            .collect();
        entries.sort_by(|x, y| x.1.compare(&y.1).expect("one radicand per orbit"));
        for pair in entries.windows(2) {
            if pair[0].1.compare(&pair[1].1)? != Ordering::Less {
                return Err(GapError::PointCollision {
                    n: cfg.n_points(),
                    q: cfg
                        .alpha()
                        .denominator()
                        .map_or_else(|| "?".into(), |q| q.to_string()),
                });
            }
        }
        Ok(SortedOrbit { entries })
    }

    pub fn entries(&self) -> &[(PointIndex, FieldValue)] {
        &self.entries
    }

    /// `successors()[n]` is the next point clockwise from `n`.
    pub fn successors(&self) -> Vec<usize> {
        let n = self.entries.len();
        let mut next = vec![0; n];
        for (i, (p, _)) in self.entries.iter().enumerate() {
            next[p.0] = self.entries[(i + 1) % n].0 .0;
        }
        next
    }

    /// Arc length from each entry to the next, the last one wrapping through 1.
    pub fn arcs(&self) -> Vec<FieldValue> {
        let n = self.entries.len();
        (0..n)
            .map(|i| {
                let end = if i + 1 < n {
                    self.entries[i + 1].1.clone()
                } else {
                    FieldValue::one()
                };
                end.try_sub(&self.entries[i].1).expect("one radicand per orbit")
            })
            .collect()
    }
}

pub fn brute_successor(cfg: &CircleConfig, n: PointIndex) -> Result<usize> {
    if n.0 >= cfg.n_points() {
        return Err(GapError::IndexOutOfRange { m: n.0, n: cfg.n_points() });
    }
    Ok(SortedOrbit::new(cfg)?.successors()[n.0])
}

/// Distinct arc lengths with multiplicities, ascending by length.
pub fn brute_gaps(cfg: &CircleConfig) -> Result<Vec<(FieldValue, usize)>> {
    Ok(group_lengths(SortedOrbit::new(cfg)?.arcs()))
}

fn group_lengths(mut arcs: Vec<FieldValue>) -> Vec<(FieldValue, usize)> {
    arcs.sort_by(|x, y| x.compare(y).expect("one radicand per orbit"));
    let mut out: Vec<(FieldValue, usize)> = Vec::new();
    for arc in arcs {
        match out.last_mut() {
            Some((len, count)) if *len == arc => *count += 1,
            _ => out.push((arc, 1)),
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    /// Gap lengths, census and successor agreement only.
    Census,
    /// Everything, including the size-`first + last` comparisons and the
    /// exhaustive middle-band scan.
    Lemmas,
}

/// One named check run by [`verify_config`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// At most three distinct arc lengths; with three, the longest is the sum of the others.
    ThreeLengths,
    /// The census equals the sorted-orbit grouping, kinds, lengths and counts.
    CensusMatchesOrbit,
    /// Closed-form, inductive and sorted-orbit successors agree everywhere.
    SuccessorAgreement,
    /// `N <= first + last`.
    SizeBound,
    /// `first` is unchanged when the circle grows to `M = first + last` points.
    FirstStable,
    /// `last` is unchanged at `M` points.
    LastStable,
    /// `after` is unchanged at `M` points outside the middle band.
    AfterStable,
    /// Nothing lies strictly between a middle-band point and its closed-form successor.
    MiddleBandEmpty,
    /// At `N = M` there is no combined gap class.
    SaturatedTwoClasses,
}

impl Check {
    pub fn id(self) -> &'static str {
        match self {
            Check::ThreeLengths => "three-lengths",
            Check::CensusMatchesOrbit => "census-matches-orbit",
            Check::SuccessorAgreement => "successor-agreement",
            Check::SizeBound => "size-bound",
            Check::FirstStable => "first-stable",
            Check::LastStable => "last-stable",
            Check::AfterStable => "after-stable",
            Check::MiddleBandEmpty => "middle-band-empty",
            Check::SaturatedTwoClasses => "saturated-two-classes",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check: Check,
    pub passed: bool,
    /// Concrete counterexample for a failed check.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub config: CircleConfig,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

impl VerificationReport {
    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn outcome(check: Check, witness: Option<String>) -> CheckResult {
    CheckResult {
        check,
        passed: witness.is_none(),
        witness,
    }
}

/// Runs the named checks in order. A failed check becomes a report entry;
/// only an invalid configuration is an error.
pub fn verify_config(cfg: &CircleConfig, depth: Depth) -> Result<VerificationReport> {
    let n = cfg.n_points();
    if n < 2 {
        return Err(GapError::TooFewPoints(n));
    }
    let truth = SortedOrbit::new(cfg)?;
    let orbit = Orbit::new(cfg);
    let (first, last) = (orbit.first()?, orbit.last()?);
    let m_total = first + last;
    let census = orbit.census(false)?;
    let brute = group_lengths(truth.arcs());
    let mut checks = Vec::new();

    checks.push(outcome(Check::ThreeLengths, three_lengths_witness(&brute)));

    let mut census_sorted: Vec<(FieldValue, usize)> =
        census.classes.iter().map(|c| (c.length.clone(), c.count)).collect();
    census_sorted.sort_by(|x, y| x.0.compare(&y.0).expect("one radicand per orbit"));
    let census_witness = (census_sorted != brute).then(|| {
        format!(
            "census {} vs orbit {}",
            render_groups(&census_sorted),
            render_groups(&brute)
        )
    });
    checks.push(outcome(Check::CensusMatchesOrbit, census_witness));

    let closed = orbit.after_table()?;
    let brute_next = truth.successors();
    let mut successor_witness = None;
    for m in 0..n {
        let inductive = orbit.after_inductive(PointIndex(m))?;
        if closed.successor[m] != inductive || inductive != brute_next[m] {
            successor_witness = Some(format!(
                "m={m}: closed={} inductive={inductive} sorted={}",
                closed.successor[m], brute_next[m]
            ));
            break;
        }
    }
    checks.push(outcome(Check::SuccessorAgreement, successor_witness));

    if depth == Depth::Lemmas {
        checks.push(outcome(
            Check::SizeBound,
            (n > m_total).then(|| format!("N={n} > first+last={m_total}")),
        ));
        lemma_checks(cfg, &orbit, first, last, &mut checks)?;
        let saturated_witness = (n == m_total)
            .then(|| census.class(GapKind::CombinedGap))
            .flatten()
            .map(|c| format!("N=M={n} but CombinedGap x{}", c.count));
        checks.push(outcome(Check::SaturatedTwoClasses, saturated_witness));
    }

    let all_passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        config: cfg.clone(),
        checks,
        all_passed,
    })
}

fn lemma_checks(
    cfg: &CircleConfig,
    orbit: &Orbit,
    first: usize,
    last: usize,
    checks: &mut Vec<CheckResult>,
) -> Result<()> {
    let n = cfg.n_points();
    let m_total = first + last;
    match cfg.with_points(m_total) {
        Ok(big_cfg) => {
            let big = Orbit::new(&big_cfg);
            let (first_m, last_m) = (big.first()?, big.last()?);
            checks.push(outcome(
                Check::FirstStable,
                (first_m != first).then(|| format!("first(N)={first} first(M)={first_m}")),
            ));
            checks.push(outcome(
                Check::LastStable,
                (last_m != last).then(|| format!("last(N)={last} last(M)={last_m}")),
            ));
            let mut witness = None;
            let lower = 1..n.saturating_sub(first);
            let upper = (last + 1)..n;
            for k in lower.chain(upper) {
                let (at_n, at_m) = (
                    orbit.after_inductive(PointIndex(k))?,
                    big.after_inductive(PointIndex(k))?,
                );
                if at_n != at_m {
                    witness = Some(format!("n={k}: after(N)={at_n} after(M)={at_m}"));
                    break;
                }
            }
            checks.push(outcome(Check::AfterStable, witness));
        }
        Err(e) => {
            for check in [Check::FirstStable, Check::LastStable, Check::AfterStable] {
                checks.push(outcome(check, Some(format!("size M={m_total}: {e}"))));
            }
        }
    }

    let mut witness = None;
    'band: for j in n.saturating_sub(first)..last {
        let target = j + first - last;
        for k in 0..n {
            if orbit.cmp_points(j, k)? == Ordering::Less
                && orbit.cmp_points(k, target)? == Ordering::Less
            {
                witness = Some(format!("n={j} k={k} successor={target}"));
                break 'band;
            }
        }
    }
    checks.push(outcome(Check::MiddleBandEmpty, witness));
    Ok(())
}

fn three_lengths_witness(groups: &[(FieldValue, usize)]) -> Option<String> {
    match groups.len() {
        0..=2 => None,
        3 => {
            let sum = groups[0].0.try_add(&groups[1].0).expect("one radicand");
            (sum != groups[2].0).then(|| {
                format!("longest {} is not the sum of the others", groups[2].0)
            })
        }
        _ => Some(format!("{} distinct lengths: {}", groups.len(), render_groups(groups))),
    }
}

fn render_groups(groups: &[(FieldValue, usize)]) -> String {
    let parts: Vec<String> = groups.iter().map(|(l, c)| format!("{l} x{c}")).collect();
    format!("[{}]", parts.join(", "))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub depth: Depth,
    /// Cells above this size fall back to `Depth::Census`.
    pub max_lemma_n: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            depth: Depth::Census,
            max_lemma_n: DEFAULT_MAX_LEMMA_N,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellOutcome {
    Passed,
    Failed(VerificationReport),
    /// Rational angle with `N > q`.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepCell {
    pub angle: String,
    pub n: usize,
    pub outcome: CellOutcome,
}

/// Results of a sweep, ordered by angle text then `N`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub cells: Vec<SweepCell>,
}

impl SweepSummary {
    fn count(&self, pred: impl Fn(&CellOutcome) -> bool) -> usize {
        self.cells.iter().filter(|c| pred(&c.outcome)).count()
    }

    pub fn passed(&self) -> usize {
        self.count(|o| matches!(o, CellOutcome::Passed))
    }

    pub fn failed(&self) -> usize {
        self.count(|o| matches!(o, CellOutcome::Failed(_)))
    }

    pub fn skipped(&self) -> usize {
        self.count(|o| matches!(o, CellOutcome::Skipped))
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn first_failure(&self) -> Option<(&SweepCell, &CheckResult)> {
        self.cells.iter().find_map(|cell| match &cell.outcome {
            CellOutcome::Failed(report) => report.first_failure().map(|c| (cell, c)),
            _ => None,
        })
    }
}

/// Verifies every `(angle, N)` with `n_min <= N <= n_max` on the current
/// rayon pool.
pub fn verify_sweep(
    angles: &[Angle],
    n_min: usize,
    n_max: usize,
    options: SweepOptions,
) -> Result<SweepSummary> {
    if n_min < 2 || n_min > n_max {
        return Err(GapError::Parse(format!(
            "empty or invalid grid: n-min {n_min}, n-max {n_max}"
        )));
    }
    let grid: Vec<(&Angle, usize)> = angles
        .iter()
        .flat_map(|a| (n_min..=n_max).map(move |n| (a, n)))
        .collect();
    let mut cells = grid
        .par_iter()
        .map(|&(alpha, n)| {
            let outcome = match CircleConfig::new(alpha.clone(), n) {
                Err(GapError::PointCollision { .. }) => CellOutcome::Skipped,
                Err(e) => return Err(e),
                Ok(cfg) => {
                    let depth = if n > options.max_lemma_n {
                        Depth::Census
                    } else {
                        options.depth
                    };
                    let report = verify_config(&cfg, depth)?;
                    if report.all_passed {
                        CellOutcome::Passed
                    } else {
                        CellOutcome::Failed(report)
                    }
                }
            };
            Ok(SweepCell {
                angle: alpha.to_string(),
                n,
                outcome,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    cells.sort_by(|x, y| (&x.angle, x.n).cmp(&(&y.angle, y.n)));
    Ok(SweepSummary { cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(alpha: Angle, n: usize) -> CircleConfig {
        CircleConfig::new(alpha, n).unwrap()
    }

    fn fv(a: i64, b: i64, c: i64, d: i64) -> FieldValue {
        FieldValue::new(a, b, c, d).unwrap()
    }

    #[test]
    fn brute_successor_examples() {
        let g5 = cfg(Angle::golden(), 5);
        assert_eq!(brute_successor(&g5, PointIndex(4)).unwrap(), 1);
        // point 3 sits at 0.854, the largest position
        assert_eq!(brute_successor(&g5, PointIndex(3)).unwrap(), 0);
        // {9/7} = 2/7 is followed by 3/7 = {1 * 3/7}
        let r = cfg(Angle::rational(3, 7).unwrap(), 7);
        assert_eq!(brute_successor(&r, PointIndex(3)).unwrap(), 1);
        assert!(brute_successor(&r, PointIndex(7)).is_err());
    }

    #[test]
    fn brute_gaps_examples() {
        assert_eq!(brute_gaps(&cfg(Angle::golden(), 1)).unwrap(), vec![(FieldValue::one(), 1)]);
        assert_eq!(
            brute_gaps(&cfg(Angle::golden(), 4)).unwrap(),
            vec![(fv(7, -3, 2, 5), 1), (fv(-2, 1, 1, 5), 2), (fv(3, -1, 2, 5), 1)]
        );
        assert_eq!(
            brute_gaps(&cfg(Angle::rational(2, 5).unwrap(), 5)).unwrap(),
            vec![(FieldValue::rational(1, 5).unwrap(), 5)]
        );
    }

    #[test]
    fn sorted_orbit_starts_at_zero() {
        let s = SortedOrbit::new(&cfg(Angle::golden(), 9)).unwrap();
        assert_eq!(s.entries()[0], (PointIndex(0), FieldValue::zero()));
    }

    #[test]
    fn verify_examples() {
        let r = verify_config(&cfg(Angle::golden(), 5), Depth::Lemmas).unwrap();
        assert!(r.all_passed, "{r:?}");
        assert_eq!(r.checks.len(), 9);

        let sqrt2 = Angle::quadratic(-1, 1, 1, 2).unwrap();
        let r = verify_config(&cfg(sqrt2.clone(), 2), Depth::Lemmas).unwrap();
        assert!(r.all_passed);
        let orbit = Orbit::new(&cfg(sqrt2, 2));
        assert_eq!((orbit.first().unwrap(), orbit.last().unwrap()), (1, 1));

        let r = verify_config(&cfg(Angle::golden(), 12), Depth::Census).unwrap();
        assert!(r.all_passed);
        assert_eq!(r.checks.len(), 3);

        assert!(matches!(
            CircleConfig::new(Angle::rational(3, 7).unwrap(), 9),
            Err(GapError::PointCollision { .. })
        ));
        assert_eq!(
            verify_config(&cfg(Angle::golden(), 1), Depth::Census),
            Err(GapError::TooFewPoints(1))
        );
    }

    #[test]
    fn three_lengths_rejects_bad_groupings() {
        let q = |p, d| FieldValue::rational(p, d).unwrap();
        assert!(three_lengths_witness(&[(q(1, 10), 2), (q(1, 5), 1), (q(3, 10), 2)]).is_none());
        assert!(three_lengths_witness(&[(q(1, 10), 2), (q(1, 5), 1), (q(2, 5), 1)]).is_some());
        let four = [(q(1, 20), 1), (q(1, 10), 1), (q(1, 5), 1), (q(13, 20), 1)];
        assert!(three_lengths_witness(&four).is_some());
    }

    #[test]
    fn sweep_skips_rational_cells_beyond_q() {
        let s = verify_sweep(&[Angle::rational(1, 3).unwrap()], 2, 10, SweepOptions::default()).unwrap();
        assert_eq!((s.passed(), s.failed(), s.skipped()), (2, 0, 7));
        assert!(verify_sweep(&[Angle::golden()], 5, 2, SweepOptions::default()).is_err());
        assert!(verify_sweep(&[Angle::golden()], 1, 2, SweepOptions::default()).is_err());
    }

    #[test]
    fn sweep_is_sorted_and_deterministic() {
        let angles = [Angle::quadratic(0, 1, 1, 3).unwrap(), Angle::golden()];
        let opts = SweepOptions { depth: Depth::Lemmas, max_lemma_n: 16 };
        let a = verify_sweep(&angles, 2, 24, opts).unwrap();
        let b = verify_sweep(&angles, 2, 24, opts).unwrap();
        assert_eq!(a, b);
        assert!(a.all_passed());
        assert_eq!(a.cells[0].angle, "(-1+1*sqrt(3))/1");
        assert!(a.cells.windows(2).all(|w| (&w[0].angle, w[0].n) < (&w[1].angle, w[1].n)));
    }
}

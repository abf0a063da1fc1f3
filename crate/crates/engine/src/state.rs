//! Proof state: known zeros, reduced relation rows, and the recorded trace.
//!
//! Rows live in two places. `pending` buffers freshly instantiated relations;
//! every `elimination_cadence` new rows (and at stream end) they are folded
//! into `pivots`, a sparse row-echelon structure keyed by each row's
//! lexicographically smallest point, with the leading coefficient scaled to
//! one. Zero facts discovered at any stage propagate immediately through both
//! structures, so neither ever holds a point that is already known zero after
//! `propagate` returns.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::mem;

use schilling_core::{in_support, FieldCase, Point, QuadField};
use schilling_trace::{RunParams, StepId, StepKind, TraceStep};

use crate::relation::{instantiate, Terms};
use crate::result::ProofResult;

/// Hard limits for one saturation run. The defaults are far above what
/// windows up to 20 need; they exist to stop runaway exploration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_substitutions: usize,
    pub max_relations: usize,
    /// Run full elimination after this many new buffered relations.
    pub elimination_cadence: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_substitutions: 100_000,
            max_relations: 1_000_000,
            elimination_cadence: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub substitutions: usize,
    pub eliminations: usize,
    pub relations_created: usize,
    pub peak_relations: usize,
}

struct Row {
    terms: Terms,
    step: StepId,
}

pub struct ProofState {
    field: QuadField,
    budget: Budget,
    stats: Stats,
    steps: Vec<TraceStep>,
    known_zero: BTreeMap<Point, StepId>,
    pivots: BTreeMap<Point, Row>,
    pending: Vec<Row>,
    zero_queue: VecDeque<Point>,
    substituted: BTreeSet<Point>,
    fingerprints: BTreeSet<String>,
    chased: BTreeSet<Point>,
    frontier: VecDeque<Point>,
    new_since_elimination: usize,
    adaptive: bool,
    budget_exhausted: bool,
}

impl ProofState {
    pub fn new(field: QuadField, budget: Budget) -> ProofState {
        ProofState {
            field,
            budget,
            stats: Stats::default(),
            steps: Vec::new(),
            known_zero: BTreeMap::new(),
            pivots: BTreeMap::new(),
            pending: Vec::new(),
            zero_queue: VecDeque::new(),
            substituted: BTreeSet::new(),
            fingerprints: BTreeSet::new(),
            chased: BTreeSet::new(),
            frontier: VecDeque::new(),
            new_since_elimination: 0,
            adaptive: true,
            budget_exhausted: false,
        }
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn known_zero(&self) -> &BTreeMap<Point, StepId> {
        &self.known_zero
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn budget_exhausted(&self) -> bool {
        self.budget_exhausted
    }

    pub fn all_known(&self, points: &[Point]) -> bool {
        points.iter().all(|p| self.known_zero.contains_key(p))
    }

    /// Whether follow-up substitutions `p / q` are enqueued for unknown
    /// relation points. This is the induction step of the hand derivation;
    /// fixed candidate streams (the grid sweep) turn it off.
    pub fn set_adaptive(&mut self, adaptive: bool) {
        self.adaptive = adaptive;
    }

    pub fn enqueue_candidates(&mut self, candidates: impl IntoIterator<Item = Point>) {
        self.frontier.extend(candidates);
    }

    pub fn next_candidate(&mut self) -> Option<Point> {
        self.frontier.pop_front()
    }

    pub fn cadence_reached(&self) -> bool {
        self.new_since_elimination >= self.budget.elimination_cadence
    }

    fn record(&mut self, kind: StepKind) -> StepId {
        let id = self.steps.len() as StepId;
        self.steps.push(TraceStep { id, kind });
        id
    }

    fn track_peak(&mut self) {
        let live = self.pivots.len() + self.pending.len();
        if live > self.stats.peak_relations {
            self.stats.peak_relations = live;
        }
    }

    /// If `point` lies strictly beyond the support bound, record the
    /// support-condition conclusion for it and return the concluding step.
    pub fn assert_support_zero(&mut self, point: &Point) -> Option<StepId> {
        if in_support(&self.field, point) {
            return None;
        }
        if let Some(&id) = self.known_zero.get(point) {
            return Some(id);
        }
        let support = self.record(StepKind::SupportZero {
            point: point.clone(),
        });
        let conclude = self.record(StepKind::ConcludeZero {
            source: support,
            point: point.clone(),
        });
        self.known_zero.insert(point.clone(), conclude);
        self.zero_queue.push_back(point.clone());
        Some(conclude)
    }

    /// Instantiate the dilation equation at `y` and fold the relation in.
    /// Returns `false` once the budget is exhausted.
    pub fn ingest(&mut self, y: &Point) -> bool {
        if !self.substituted.insert(y.clone()) {
            return true; // substitution already made
        }
        if self.stats.substitutions >= self.budget.max_substitutions
            || self.stats.relations_created >= self.budget.max_relations
        {
            self.budget_exhausted = true;
            return false;
        }
        self.stats.substitutions += 1;

        let rel = instantiate(&self.field, y);
        if rel.is_trivial() {
            return true; // every term was beyond the support bound
        }
        if !self.fingerprints.insert(rel.fingerprint()) {
            return true; // duplicate of a relation already seen
        }
        if self.adaptive {
            for p in rel.terms.keys() {
                if self.chased.insert(p.clone()) {
                    self.frontier.push_back(Point::new(p.value() * self.field.inv_q()));
                }
            }
        }
        let step = self.record(StepKind::Instantiate {
            at: y.clone(),
            kept: rel.terms_vec(),
            dropped: rel.origin.eliminated.clone(),
        });
        self.stats.relations_created += 1;
        self.admit(Row {
            terms: rel.terms,
            step,
        });
        true
    }

    /// Unit-propagation entry for a new row: strip known zeros, then either
    /// conclude, buffer, or discard it.
    fn admit(&mut self, row: Row) {
        let row = match self.strip_known_zeros(row) {
            Some(row) => row,
            None => return,
        };
        if row.terms.len() == 1 {
            self.conclude(row);
        } else {
            self.pending.push(row);
            self.new_since_elimination += 1;
            self.track_peak();
        }
    }

    /// Record a `Reduce` step if any term of `row` is known zero; `None` when
    /// nothing survives.
    fn strip_known_zeros(&mut self, row: Row) -> Option<Row> {
        if row.terms.is_empty() {
            return None;
        }
        let removed: Vec<(Point, StepId)> = row
            .terms
            .keys()
            .filter_map(|p| self.known_zero.get(p).map(|id| (p.clone(), *id)))
            .collect();
        if removed.is_empty() {
            return Some(row);
        }
        let mut terms = row.terms;
        for (p, _) in &removed {
            terms.remove(p);
        }
        let step = self.record(StepKind::Reduce {
            source: row.step,
            removed,
        });
        if terms.is_empty() {
            None
        } else {
            Some(Row { terms, step })
        }
    }

    fn conclude(&mut self, row: Row) {
        debug_assert_eq!(row.terms.len(), 1);
        let (point, coeff) = row.terms.into_iter().next().expect("single term");
        debug_assert!(!coeff.is_zero(), "stored coefficients are never zero");
        if self.known_zero.contains_key(&point) {
            return; // second derivation of the same fact; keep the first
        }
        let step = self.record(StepKind::ConcludeZero {
            source: row.step,
            point: point.clone(),
        });
        self.known_zero.insert(point.clone(), step);
        self.zero_queue.push_back(point);
    }

    /// Push queued zero facts through every live row until stable.
    pub fn propagate(&mut self) {
        while let Some(z) = self.zero_queue.pop_front() {
            let affected: Vec<Point> = self
                .pivots
                .iter()
                .filter(|(_, row)| row.terms.contains_key(&z))
                .map(|(lead, _)| lead.clone())
                .collect();
            for lead in affected {
                let row = self.pivots.remove(&lead).expect("collected above");
                if let Some(row) = self.strip_known_zeros(row) {
                    self.insert_row(row);
                }
            }
            let pending = mem::take(&mut self.pending);
            for row in pending {
                if !row.terms.contains_key(&z) {
                    self.pending.push(row);
                } else if let Some(row) = self.strip_known_zeros(row) {
                    if row.terms.len() == 1 {
                        self.conclude(row);
                    } else {
                        self.pending.push(row);
                    }
                }
            }
        }
    }

    /// Fold every buffered relation into the row-echelon structure, then
    /// propagate to a fixed point. Returns the points newly concluded zero.
    /// Elimination never fails; it may simply not conclude anything.
    pub fn eliminate(&mut self) -> Vec<Point> {
        let before: BTreeSet<Point> = self.known_zero.keys().cloned().collect();
        self.stats.eliminations += 1;
        self.propagate();
        while !self.pending.is_empty() {
            for row in mem::take(&mut self.pending) {
                self.insert_row(row);
            }
            self.propagate();
        }
        self.new_since_elimination = 0;
        self.known_zero
            .keys()
            .filter(|p| !before.contains(*p))
            .cloned()
            .collect()
    }

    /// Insert one row, combining it against existing pivot rows until its
    /// leading point is fresh. Each combination strictly increases the lead,
    /// so the loop terminates.
    fn insert_row(&mut self, mut row: Row) {
        loop {
            row = match self.strip_known_zeros(row) {
                Some(row) => row,
                None => return,
            };
            if row.terms.len() == 1 {
                self.conclude(row);
                return;
            }
            let lead = row.terms.keys().next().expect("nonempty").clone();
            let lead_coeff = row.terms[&lead].clone();
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    // row := row - lead_coeff * pivot (pivot lead is one).
                    let mut combined = row.terms.clone();
                    for (p, c) in &pivot.terms {
                        let delta = c * &lead_coeff;
                        let entry = combined
                            .entry(p.clone())
                            .or_insert_with(|| self.field.zero());
                        *entry = &*entry - &delta;
                    }
                    combined.retain(|_, c| !c.is_zero());
                    debug_assert!(!combined.contains_key(&lead));
                    if combined.is_empty() {
                        return; // linearly dependent, nothing learned
                    }
                    let step = self.record(StepKind::EliminateRow {
                        sources: vec![(row.step, self.field.one()), (pivot.step, -lead_coeff)],
                        result: terms_vec(&combined),
                    });
                    self.stats.relations_created += 1;
                    row = Row {
                        terms: combined,
                        step,
                    };
                }
                None => {
                    if !lead_coeff.is_one() {
                        let inv = lead_coeff.inv().expect("lead coefficient is nonzero");
                        let scaled: Terms = row
                            .terms
                            .iter()
                            .map(|(p, c)| (p.clone(), c * &inv))
                            .collect();
                        let step = self.record(StepKind::EliminateRow {
                            sources: vec![(row.step, inv)],
                            result: terms_vec(&scaled),
                        });
                        self.stats.relations_created += 1;
                        row = Row {
                            terms: scaled,
                            step,
                        };
                    }
                    self.pivots.insert(lead, row);
                    self.track_peak();
                    return;
                }
            }
        }
    }

    pub fn into_result(
        mut self,
        case: FieldCase,
        targets: Vec<Point>,
        params: RunParams,
    ) -> ProofResult {
        self.propagate();
        let unresolved: BTreeSet<Point> = targets
            .iter()
            .filter(|t| !self.known_zero.contains_key(*t))
            .cloned()
            .collect();
        ProofResult {
            case,
            targets,
            proven: self.known_zero,
            unresolved,
            stats: self.stats,
            steps: self.steps,
            params,
        }
    }
}

fn terms_vec(terms: &Terms) -> Vec<(Point, schilling_core::FieldElement)> {
    terms.iter().map(|(p, c)| (p.clone(), c.clone())).collect()
}

//! Exhaustive, isomorph-free enumeration of `(t, λ)`-liking digraphs.
//!
//! Rows (out-neighborhoods) are placed one vertex at a time. Once a row is
//! placed it never changes, so every intersection of placed rows is final and
//! the constraints below reject exactly, not just by bound:
//!
//! - R1: a row has at least `t + λ - 1` vertices;
//! - R2: every `t` placed rows meet in exactly `λ` vertices;
//! - R3: every `t - i` placed rows meet in at least `λ + i` vertices;
//! - R4: out-degrees are non-increasing in vertex index (symmetry breaking).
//!
//! Complete matrices are re-checked with [`check_liking`] and deduplicated by
//! canonical key, so switching any rule off changes only the node counts.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::analysis::check_liking;
use crate::canon::{canonical_form_bounded, CanonicalKey};
use crate::digraph::Digraph;
use crate::vertex_set::VertexSet;

/// Largest order accepted by [`enumerate_liking`].
pub const SEARCH_MAX_ORDER: usize = 16;
/// Largest order accepted by [`brute_force_oracle`].
pub const ORACLE_MAX_ORDER: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    ConfigInvalid(String),
    #[error("node budget exhausted after {} nodes", .partial.stats.expanded)]
    BudgetExhausted { partial: Box<Catalog> },
    #[error("brute-force oracle supports n <= {max}, got {n}")]
    OrderTooLargeForOracle { n: usize, max: usize },
}

/// Which pruning rules are active.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PruneRules {
    pub min_out_degree: bool,
    pub exact_intersections: bool,
    pub expansion: bool,
}

impl PruneRules {
    pub const ALL: PruneRules = PruneRules {
        min_out_degree: true,
        exact_intersections: true,
        expansion: true,
    };
    pub const NONE: PruneRules = PruneRules {
        min_out_degree: false,
        exact_intersections: false,
        expansion: false,
    };
}

impl Default for PruneRules {
    fn default() -> Self {
        PruneRules::ALL
    }
}

/// Everything about a search except `(t, λ, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Budget in search-tree nodes (candidate rows examined).
    pub max_nodes: Option<u64>,
    pub workers: usize,
    pub symmetry_breaking: bool,
    pub prune: PruneRules,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_nodes: None,
            workers: 1,
            symmetry_breaking: true,
            prune: PruneRules::ALL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub t: usize,
    pub lambda: usize,
    pub n: usize,
    pub options: SearchOptions,
}

impl SearchConfig {
    pub fn new(t: usize, lambda: usize, n: usize) -> Self {
        SearchConfig {
            t,
            lambda,
            n,
            options: SearchOptions::default(),
        }
    }

    pub fn with_options(mut self, options: SearchOptions) -> Self {
        self.options = options;
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: String| Err(SearchError::ConfigInvalid(m));
        if self.t == 0 {
            return bad("t must be at least 1".into());
        }
        if self.lambda == 0 {
            return bad("lambda must be at least 1".into());
        }
        if self.n == 0 || self.n > SEARCH_MAX_ORDER {
            return bad(format!(
                "n must be in 1..={SEARCH_MAX_ORDER}, got {}",
                self.n
            ));
        }
        if self.options.workers == 0 {
            return bad("at least one worker is required".into());
        }
        Ok(())
    }
}

/// Candidate rows rejected, per rule.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PruneCounts {
    pub min_out_degree: u64,
    pub exact_intersections: u64,
    pub expansion: u64,
    pub symmetry: u64,
}

impl PruneCounts {
    pub fn total(&self) -> u64 {
        self.min_out_degree + self.exact_intersections + self.expansion + self.symmetry
    }

    fn add(&mut self, o: &PruneCounts) {
        self.min_out_degree += o.min_out_degree;
        self.exact_intersections += o.exact_intersections;
        self.expansion += o.expansion;
        self.symmetry += o.symmetry;
    }
}

/// Node accounting: `expanded = pruned.total() + extended + completed`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub expanded: u64,
    pub extended: u64,
    pub completed: u64,
    pub pruned: PruneCounts,
    /// Completed matrices that failed the final liking check.
    pub rejected_complete: u64,
    pub elapsed: Duration,
}

impl SearchStats {
    pub fn consistent(&self) -> bool {
        self.expanded == self.pruned.total() + self.extended + self.completed
            && self.rejected_complete <= self.completed
    }

    fn add(&mut self, o: &SearchStats) {
        self.expanded += o.expanded;
        self.extended += o.extended;
        self.completed += o.completed;
        self.pruned.add(&o.pruned);
        self.rejected_complete += o.rejected_complete;
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Representative {
    pub key: CanonicalKey,
    pub digraph: Digraph,
}

impl fmt::Debug for Representative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub config: SearchConfig,
    /// Canonical representatives, sorted by key.
    pub representatives: Vec<Representative>,
    pub stats: SearchStats,
    /// `false` if the node budget cut the search short.
    pub complete: bool,
}

impl Catalog {
    fn from_keys(
        config: SearchConfig,
        keys: BTreeSet<CanonicalKey>,
        stats: SearchStats,
        complete: bool,
    ) -> Self {
        let representatives = keys
            .into_iter()
            .map(|key| Representative {
                digraph: key.to_digraph().expect("keys come from valid digraphs"),
                key,
            })
            .collect();
        Catalog {
            config,
            representatives,
            stats,
            complete,
        }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.representatives.iter().map(|r| &r.key)
    }

    pub fn key_set(&self) -> BTreeSet<CanonicalKey> {
        self.keys().cloned().collect()
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.representatives
            .binary_search_by(|r| r.key.cmp(key))
            .is_ok()
    }

    /// `Err(BudgetExhausted)` carrying this catalog if it is truncated.
    pub fn require_complete(self) -> Result<Catalog, SearchError> {
        if self.complete {
            Ok(self)
        } else {
            Err(SearchError::BudgetExhausted {
                partial: Box::new(self),
            })
        }
    }
}

/// Enumerates every isomorphism class of `(t, λ)`-liking digraphs of order
/// `config.n`.
///
/// Orders below `t` have no `t`-subsets at all and yield an empty catalog.
pub fn enumerate_liking(config: &SearchConfig) -> Result<Catalog, SearchError> {
    config.validate()?;
    let start = Instant::now();
    if config.t > config.n {
        let stats = SearchStats {
            elapsed: start.elapsed(),
            ..SearchStats::default()
        };
        return Ok(Catalog::from_keys(*config, BTreeSet::new(), stats, true));
    }

    let plan = Plan::new(config);
    let shared = Shared {
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
    };
    let workers = config.options.workers.min(plan.candidates[0].len()).max(1);
    let results: Vec<WorkerResult> = if workers == 1 {
        vec![Worker::new(&plan, &shared, 0, 1).run()]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let (plan, shared) = (&plan, &shared);
                    scope.spawn(move || Worker::new(plan, shared, w, workers).run())
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };

    let mut stats = SearchStats::default();
    let mut keys = BTreeSet::new();
    let mut truncated = false;
    for r in results {
        stats.add(&r.stats);
        keys.extend(r.keys);
        truncated |= r.truncated;
    }
    stats.elapsed = start.elapsed();
    Ok(Catalog::from_keys(*config, keys, stats, !truncated))
}

/// Read-only data shared by all workers.
struct Plan {
    config: SearchConfig,
    /// Candidate rows for each vertex, by decreasing popcount then mask.
    candidates: Vec<Vec<u64>>,
    min_degree: u32,
}

impl Plan {
    fn new(config: &SearchConfig) -> Self {
        let n = config.n;
        let full = VertexSet::full(n).mask();
        let candidates = (0..n)
            .map(|j| {
                let others = full & !(1u64 << j);
                let mut rows: Vec<u64> = (0..1u64 << n).filter(|m| m & !others == 0).collect();
                rows.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
                rows
            })
            .collect();
        Plan {
            config: *config,
            candidates,
            min_degree: (config.t + config.lambda - 1) as u32,
        }
    }
}

struct Shared {
    nodes: AtomicU64,
    stop: AtomicBool,
}

struct WorkerResult {
    stats: SearchStats,
    keys: BTreeSet<CanonicalKey>,
    truncated: bool,
}

const FLUSH_EVERY: u64 = 1024;

struct Worker<'a> {
    plan: &'a Plan,
    shared: &'a Shared,
    index: usize,
    stride: usize,
    rows: Vec<u64>,
    /// `layers[s]`: intersections of all `s`-subsets of placed rows.
    layers: Vec<Vec<u64>>,
    stats: SearchStats,
    unflushed: u64,
    keys: BTreeSet<CanonicalKey>,
    truncated: bool,
}

impl<'a> Worker<'a> {
    fn new(plan: &'a Plan, shared: &'a Shared, index: usize, stride: usize) -> Self {
        let t = plan.config.t;
        let mut layers = vec![Vec::new(); t];
        layers[0].push(VertexSet::full(plan.config.n).mask());
        Worker {
            plan,
            shared,
            index,
            stride,
            rows: Vec::with_capacity(plan.config.n),
            layers,
            stats: SearchStats::default(),
            unflushed: 0,
            keys: BTreeSet::new(),
            truncated: false,
        }
    }

    fn run(mut self) -> WorkerResult {
        self.place(0);
        self.shared
            .nodes
            .fetch_add(self.unflushed, Ordering::Relaxed);
        WorkerResult {
            stats: self.stats,
            keys: self.keys,
            truncated: self.truncated,
        }
    }

    fn over_budget(&mut self) -> bool {
        let Some(max) = self.plan.config.options.max_nodes else {
            return false;
        };
        if self.shared.stop.load(Ordering::Relaxed) {
            return true;
        }
        if self.unflushed >= FLUSH_EVERY {
            self.shared
                .nodes
                .fetch_add(self.unflushed, Ordering::Relaxed);
            self.unflushed = 0;
        }
        if self.shared.nodes.load(Ordering::Relaxed) + self.unflushed >= max {
            self.shared.stop.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn place(&mut self, j: usize) {
        let plan = self.plan;
        let cfg = &plan.config;
        let (t, lambda, n) = (cfg.t, cfg.lambda, cfg.n);
        let prune = cfg.options.prune;
        let prev_degree = j
            .checked_sub(1)
            .map(|p| self.rows[p].count_ones())
            .filter(|_| cfg.options.symmetry_breaking);

        for (idx, &row) in plan.candidates[j].iter().enumerate() {
            if j == 0 && idx % self.stride != self.index {
                continue;
            }
            if self.over_budget() {
                self.truncated = true;
                return;
            }
            self.stats.expanded += 1;
            self.unflushed += 1;
            let degree = row.count_ones();

            if prev_degree.is_some_and(|p| degree > p) {
                self.stats.pruned.symmetry += 1;
                continue;
            }
            if prune.min_out_degree && degree < plan.min_degree {
                self.stats.pruned.min_out_degree += 1;
                continue;
            }
            if prune.exact_intersections
                && self.layers[t - 1]
                    .iter()
                    .any(|&m| (m & row).count_ones() as usize != lambda)
            {
                self.stats.pruned.exact_intersections += 1;
                continue;
            }
            if prune.expansion
                && (0..t - 1).any(|s| {
                    let need = lambda + t - 1 - s;
                    self.layers[s]
                        .iter()
                        .any(|&m| ((m & row).count_ones() as usize) < need)
                })
            {
                self.stats.pruned.expansion += 1;
                continue;
            }

            self.rows.push(row);
            if j + 1 == n {
                self.stats.completed += 1;
                self.finish();
            } else {
                self.stats.extended += 1;
                let marks: Vec<usize> = self.layers.iter().map(Vec::len).collect();
                for s in (1..t).rev() {
                    let fresh: Vec<u64> = self.layers[s - 1].iter().map(|&m| m & row).collect();
                    self.layers[s].extend(fresh);
                }
                self.place(j + 1);
                for (layer, mark) in self.layers.iter_mut().zip(marks) {
                    layer.truncate(mark);
                }
            }
            self.rows.pop();
            if self.truncated {
                return;
            }
        }
    }

    fn finish(&mut self) {
        let cfg = &self.plan.config;
        let d = Digraph::from_rows_unchecked(
            self.rows.iter().map(|&m| VertexSet::from_mask(m)).collect(),
        );
        let liking = check_liking(&d, cfg.t, cfg.lambda)
            .map(|r| r.holds)
            .unwrap_or(false);
        if !liking {
            self.stats.rejected_complete += 1;
            return;
        }
        let key = canonical_form_bounded(&d, SEARCH_MAX_ORDER).expect("order within search bound");
        self.keys.insert(key);
    }
}

/// Unpruned sweep over all `2^(n(n-1))` loop-free digraphs; a test oracle.
pub fn brute_force_oracle(t: usize, lambda: usize, n: usize) -> Result<Catalog, SearchError> {
    if n > ORACLE_MAX_ORDER {
        return Err(SearchError::OrderTooLargeForOracle {
            n,
            max: ORACLE_MAX_ORDER,
        });
    }
    let options = SearchOptions {
        symmetry_breaking: false,
        prune: PruneRules::NONE,
        ..SearchOptions::default()
    };
    let config = SearchConfig::new(t, lambda, n).with_options(options);
    config.validate()?;
    let start = Instant::now();
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let mut stats = SearchStats::default();
    let mut keys = BTreeSet::new();
    if t <= n {
        for code in 0u64..1 << slots.len() {
            let mut rows = vec![VertexSet::EMPTY; n];
            for (bit, &(u, v)) in slots.iter().enumerate() {
                if code >> bit & 1 == 1 {
                    rows[u].insert(v);
                }
            }
            let d = Digraph::from_rows_unchecked(rows);
            stats.expanded += 1;
            stats.completed += 1;
            if check_liking(&d, t, lambda).expect("t <= n").holds {
                keys.insert(canonical_form_bounded(&d, ORACLE_MAX_ORDER).expect("small order"));
            } else {
                stats.rejected_complete += 1;
            }
        }
    }
    stats.elapsed = start.elapsed();
    Ok(Catalog::from_keys(config, keys, stats, true))
}

/// One catalog per order in `n_min..=n_max`.
#[derive(Debug, Clone)]
pub struct RangeReport {
    pub t: usize,
    pub lambda: usize,
    pub catalogs: Vec<Catalog>,
}

impl RangeReport {
    pub fn complete(&self) -> bool {
        self.catalogs.iter().all(|c| c.complete)
    }

    /// For `t >= λ + 2`: whether the sweep shows exactly one class, the
    /// complete digraph, at order `t + λ` and nothing elsewhere. `None` when
    /// the uniqueness statement does not apply or a catalog is truncated.
    pub fn theorem1_consistent(&self) -> Option<bool> {
        if self.t < self.lambda + 2 || !self.complete() {
            return None;
        }
        let target = self.t + self.lambda;
        let complete_key = (target <= SEARCH_MAX_ORDER).then(|| {
            canonical_form_bounded(
                &Digraph::complete(target).expect("valid order"),
                SEARCH_MAX_ORDER,
            )
            .expect("valid order")
        });
        Some(self.catalogs.iter().all(|c| {
            if c.config.n == target {
                c.len() == 1 && complete_key.as_ref().is_some_and(|k| c.contains(k))
            } else {
                c.is_empty()
            }
        }))
    }

    /// Err on the first truncated catalog.
    pub fn require_complete(self) -> Result<RangeReport, SearchError> {
        if let Some(c) = self.catalogs.iter().find(|c| !c.complete) {
            return Err(SearchError::BudgetExhausted {
                partial: Box::new(c.clone()),
            });
        }
        Ok(self)
    }
}

/// Runs [`enumerate_liking`] for every order in `n_min..=n_max`; the node
/// budget applies per order.
pub fn enumerate_range(
    t: usize,
    lambda: usize,
    n_min: usize,
    n_max: usize,
    options: SearchOptions,
) -> Result<RangeReport, SearchError> {
    if n_min > n_max || n_max > SEARCH_MAX_ORDER {
        return Err(SearchError::ConfigInvalid(format!(
            "order range {n_min}..={n_max} must be nonempty and within {SEARCH_MAX_ORDER}"
        )));
    }
    let catalogs = (n_min.max(1)..=n_max)
        .map(|n| enumerate_liking(&SearchConfig::new(t, lambda, n).with_options(options)))
        .collect::<Result<_, _>>()?;
    Ok(RangeReport {
        t,
        lambda,
        catalogs,
    })
}

/// Catalog text: a header line then one `<n>:<bits>` line per class.
pub fn write_catalog(c: &Catalog) -> String {
    let mut s = format!(
        "# t={} lambda={} n={} nodes={} complete={}\n",
        c.config.t,
        c.config.lambda,
        c.config.n,
        c.stats.expanded,
        if c.complete { "yes" } else { "no" }
    );
    for r in &c.representatives {
        s.push_str(r.key.as_str());
        s.push('\n');
    }
    s
}

/// A catalog as read back from disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogFile {
    pub t: usize,
    pub lambda: usize,
    pub n: usize,
    pub nodes: u64,
    pub complete: bool,
    pub keys: Vec<CanonicalKey>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("catalog line {line}: {message}")]
pub struct CatalogParseError {
    pub line: usize,
    pub message: String,
}

pub fn read_catalog(text: &str) -> Result<CatalogFile, CatalogParseError> {
    let err = |line: usize, message: &str| CatalogParseError {
        line,
        message: message.to_string(),
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let body = header
        .strip_prefix('#')
        .ok_or_else(|| err(1, "header must start with '#'"))?;
    let mut fields = std::collections::HashMap::new();
    for item in body.split_whitespace() {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| err(1, "header fields are key=value"))?;
        fields.insert(k, v);
    }
    let num = |k: &str| -> Result<u64, CatalogParseError> {
        fields
            .get(k)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| err(1, &format!("missing or bad field {k}")))
    };
    let complete = match fields.get("complete") {
        Some(&"yes") => true,
        Some(&"no") => false,
        _ => return Err(err(1, "complete must be yes or no")),
    };
    let n = num("n")? as usize;
    let mut keys = Vec::new();
    for (line, l) in lines {
        if l.is_empty() {
            continue;
        }
        let key = CanonicalKey::parse(l).ok_or_else(|| err(line, "malformed catalog entry"))?;
        if !key.as_str().starts_with(&format!("{n}:")) {
            return Err(err(line, "entry order does not match header"));
        }
        keys.push(key);
    }
    Ok(CatalogFile {
        t: num("t")? as usize,
        lambda: num("lambda")? as usize,
        n,
        nodes: num("nodes")?,
        complete,
        keys,
    })
}

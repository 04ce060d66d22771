//! The executable theorem catalog: every result in scope as a check over
//! concrete instances, plus deterministic corpus and structure generation.
//!
//! Each check yields Pass, Fail (with a replayable instance dump in the
//! workspace grammar) or Skip (naming the unmet hypothesis). A Fail is a
//! counterexample to the corresponding theorem and signals an engine bug.

mod checks;

pub(crate) use checks::Engine;

use crate::classify::MCSet;
use crate::homs::GoodHom;
use crate::ideals::{enumerate_hyperideals, Hyperideal};
use crate::ring::{build_zphi, validate, HyperringTable, RawTables};
use crate::set::BitIter;
use crate::workspace::Workspace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;

/// Catalog identifiers in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    T11,
    T12,
    PProd,
    PS1S2,
    PInt,
    TEq3,
    P13,
    T14,
    THomo,
    TQuot,
    TCart,
    T21,
    T23,
    T24,
    TPure,
    T41,
    T42,
    THomo2,
    TCartSq,
}

pub const CATALOG: [CheckId; 19] = [
    CheckId::T11,
    CheckId::T12,
    CheckId::PProd,
    CheckId::PS1S2,
    CheckId::PInt,
    CheckId::TEq3,
    CheckId::P13,
    CheckId::T14,
    CheckId::THomo,
    CheckId::TQuot,
    CheckId::TCart,
    CheckId::T21,
    CheckId::T23,
    CheckId::T24,
    CheckId::TPure,
    CheckId::T41,
    CheckId::T42,
    CheckId::THomo2,
    CheckId::TCartSq,
];

impl CheckId {
    pub fn name(self) -> &'static str {
        match self {
            CheckId::T11 => "T11",
            CheckId::T12 => "T12",
            CheckId::PProd => "P_PROD",
            CheckId::PS1S2 => "P_S1S2",
            CheckId::PInt => "P_INT",
            CheckId::TEq3 => "T_EQ3",
            CheckId::P13 => "P13",
            CheckId::T14 => "T14",
            CheckId::THomo => "T_HOMO",
            CheckId::TQuot => "T_QUOT",
            CheckId::TCart => "T_CART",
            CheckId::T21 => "T21",
            CheckId::T23 => "T23",
            CheckId::T24 => "T24",
            CheckId::TPure => "T_PURE",
            CheckId::T41 => "T41",
            CheckId::T42 => "T42",
            CheckId::THomo2 => "T_HOMO2",
            CheckId::TCartSq => "T_CART_SQ",
        }
    }

    pub fn from_name(name: &str) -> Option<CheckId> {
        CATALOG.iter().copied().find(|id| id.name() == name)
    }

    fn shape(self) -> Shape {
        match self {
            CheckId::THomo | CheckId::THomo2 => Shape::Hom,
            CheckId::TCart | CheckId::TCartSq => Shape::Pair,
            _ => Shape::Single,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Single,
    Pair,
    Hom,
}

/// One concrete test subject. All components are validated at construction
/// time by the generator or corpus builder.
#[derive(Debug, Clone)]
pub enum Instance {
    /// One ring with a hyperideal and an MCS.
    Single {
        ring: Arc<HyperringTable>,
        ideal: Hyperideal,
        mcs: MCSet,
    },
    /// Two rings with componentwise data and their prebuilt direct product.
    Pair {
        left: Arc<HyperringTable>,
        right: Arc<HyperringTable>,
        product: Arc<HyperringTable>,
        left_ideal: Hyperideal,
        right_ideal: Hyperideal,
        left_mcs: MCSet,
        right_mcs: MCSet,
    },
    /// A good homomorphism with source-side data.
    Hom {
        hom: GoodHom,
        ideal: Hyperideal,
        mcs: MCSet,
    },
}

impl Instance {
    fn shape(&self) -> Shape {
        match self {
            Instance::Single { .. } => Shape::Single,
            Instance::Pair { .. } => Shape::Pair,
            Instance::Hom { .. } => Shape::Hom,
        }
    }

    /// Renders the instance in the workspace input grammar under canonical
    /// names (`g0`, `g1`, `g2`, `a0`, `a1`, `s0`, `s1`, `h0`), prefixed with
    /// the check id, so any Fail can be re-loaded and replayed.
    pub fn dump(&self, id: CheckId, description: &str) -> String {
        let mut ws = Workspace::default();
        match self {
            Instance::Single { ring, ideal, mcs } => {
                ws.add_ring("g0", ring.clone()).unwrap();
                ws.add_ideal("a0", "g0", *ideal).unwrap();
                ws.add_mcs("s0", "g0", *mcs).unwrap();
            }
            Instance::Pair {
                left,
                right,
                product,
                left_ideal,
                right_ideal,
                left_mcs,
                right_mcs,
            } => {
                ws.add_ring("g0", left.clone()).unwrap();
                ws.add_ring("g1", right.clone()).unwrap();
                ws.add_ring("g2", product.clone()).unwrap();
                ws.add_ideal("a0", "g0", *left_ideal).unwrap();
                ws.add_ideal("a1", "g1", *right_ideal).unwrap();
                ws.add_mcs("s0", "g0", *left_mcs).unwrap();
                ws.add_mcs("s1", "g1", *right_mcs).unwrap();
            }
            Instance::Hom { hom, ideal, mcs } => {
                ws.add_ring("g0", hom.source().clone()).unwrap();
                ws.add_ring("g1", hom.target().clone()).unwrap();
                ws.add_hom("h0", "g0", "g1", hom.clone()).unwrap();
                ws.add_ideal("a0", "g0", *ideal).unwrap();
                ws.add_mcs("s0", "g0", *mcs).unwrap();
            }
        }
        let mut out = format!("# check={id}\n");
        for line in description.lines() {
            out.push_str(&format!("# {line}\n"));
        }
        out.push_str(&ws.render());
        out
    }
}

/// Rebuilds an instance from a dump produced by [`Instance::dump`], using
/// the canonical component names.
pub fn instance_from_workspace(ws: &Workspace) -> Option<Instance> {
    let g0 = ws.ring("g0")?;
    if let Some(h) = ws.hom("h0") {
        return Some(Instance::Hom {
            hom: h.hom.clone(),
            ideal: ws.ideal("a0")?.ideal,
            mcs: ws.mcs_named("s0")?.mcs,
        });
    }
    if let Some(g2) = ws.ring("g2") {
        return Some(Instance::Pair {
            left: g0.ring.clone(),
            right: ws.ring("g1")?.ring.clone(),
            product: g2.ring.clone(),
            left_ideal: ws.ideal("a0")?.ideal,
            right_ideal: ws.ideal("a1")?.ideal,
            left_mcs: ws.mcs_named("s0")?.mcs,
            right_mcs: ws.mcs_named("s1")?.mcs,
        });
    }
    Some(Instance::Single {
        ring: g0.ring.clone(),
        ideal: ws.ideal("a0")?.ideal,
        mcs: ws.mcs_named("s0")?.mcs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailInfo {
    pub description: String,
    pub dump: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail(Box<FailInfo>),
    /// The theorem's hypotheses do not hold on this instance; carries the
    /// unmet precondition name.
    Skip(&'static str),
}

impl CheckOutcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, CheckOutcome::Fail(_))
    }
}

/// Runs one catalog check against one instance with the production engine.
pub fn run_check(id: CheckId, inst: &Instance) -> CheckOutcome {
    checks::run_check_with(id, inst, &Engine::default())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailRecord {
    pub check: CheckId,
    pub description: String,
    pub dump: String,
}

#[derive(Debug, Clone)]
pub struct Summary {
    /// Pass/Fail/Skip tallies in catalog order.
    pub per_check: Vec<(CheckId, Counts)>,
    pub fails: Vec<FailRecord>,
    pub instances: usize,
    pub discarded: usize,
    pub notes: Vec<String>,
}

impl Summary {
    pub fn total(&self) -> Counts {
        let mut t = Counts::default();
        for (_, c) in &self.per_check {
            t.pass += c.pass;
            t.fail += c.fail;
            t.skip += c.skip;
        }
        t
    }

    pub fn has_fail(&self) -> bool {
        self.fails.is_empty().eq(&false)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    /// Worker threads for check execution. Output is deterministic for any
    /// value; 1 runs fully serial.
    pub workers: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { workers: 1 }
    }
}

/// Executes every applicable catalog check over every instance. Outcomes
/// merge in deterministic (instance, check) order regardless of workers.
pub fn run_all(instances: &[Instance], opts: &RunOptions) -> Summary {
    run_all_with(instances, opts, &Engine::default(), 0, Vec::new())
}

pub(crate) fn run_all_with(
    instances: &[Instance],
    opts: &RunOptions,
    engine: &Engine,
    discarded: usize,
    notes: Vec<String>,
) -> Summary {
    let jobs: Vec<(usize, CheckId)> = instances
        .iter()
        .enumerate()
        .flat_map(|(i, inst)| {
            CATALOG
                .iter()
                .copied()
                .filter(|id| id.shape() == inst.shape())
                .map(move |id| (i, id))
        })
        .collect();
    let outcomes: Vec<CheckOutcome> = if opts.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .expect("worker pool");
        pool.install(|| {
            use rayon::prelude::*;
            jobs.par_iter()
                .map(|&(i, id)| checks::run_check_with(id, &instances[i], engine))
                .collect()
        })
    } else {
        jobs.iter()
            .map(|&(i, id)| checks::run_check_with(id, &instances[i], engine))
            .collect()
    };
    let mut per_check: Vec<(CheckId, Counts)> =
        CATALOG.iter().map(|&id| (id, Counts::default())).collect();
    let mut fails = Vec::new();
    for (&(_, id), outcome) in jobs.iter().zip(&outcomes) {
        let slot = per_check
            .iter_mut()
            .find(|(c, _)| *c == id)
            .map(|(_, c)| c)
            .unwrap();
        match outcome {
            CheckOutcome::Pass => slot.pass += 1,
            CheckOutcome::Skip(_) => slot.skip += 1,
            CheckOutcome::Fail(info) => {
                slot.fail += 1;
                fails.push(FailRecord {
                    check: id,
                    description: info.description.clone(),
                    dump: info.dump.clone(),
                });
            }
        }
    }
    Summary {
        per_check,
        fails,
        instances: instances.len(),
        discarded,
        notes,
    }
}

// ----------------------------------------------------------------- corpus

fn mcs_limit_for(n: usize) -> usize {
    if n <= 6 {
        3
    } else {
        2
    }
}

fn single_instances_for(
    ring: &Arc<HyperringTable>,
    mcs_max: usize,
) -> Vec<Instance> {
    let Ok(ideals) = enumerate_hyperideals(ring) else {
        return Vec::new();
    };
    let mcss = crate::classify::enumerate_mcs(ring, mcs_max);
    let mut out = Vec::new();
    for ideal in &ideals {
        for mcs in &mcss {
            out.push(Instance::Single {
                ring: ring.clone(),
                ideal: *ideal,
                mcs: *mcs,
            });
        }
    }
    out
}

/// The fixed builtin corpus: the finite example rings plus small companions,
/// all their (ideal, MCS) combinations, quotient projections, and ring pairs
/// within the product capacity.
pub fn builtin_corpus() -> Vec<Instance> {
    let specs: Vec<(usize, Vec<usize>)> = vec![
        (1, vec![0]),
        (2, vec![1]),
        (3, vec![1, 2]),
        (4, vec![1, 3]),
        (5, vec![1, 2, 3]),
        (6, vec![1, 2, 3, 4, 5]),
        (6, vec![1]),
        (12, vec![1, 3, 9]),
    ];
    let rings: Vec<Arc<HyperringTable>> = specs
        .iter()
        .map(|(n, phi)| Arc::new(build_zphi(*n, phi).expect("builtin ring")))
        .collect();

    let mut out = Vec::new();
    for ring in &rings {
        out.extend(single_instances_for(ring, mcs_limit_for(ring.n())));
    }
    // quotient projections from every small ring
    for ring in &rings {
        if ring.n() > 6 {
            continue;
        }
        let ideals = enumerate_hyperideals(ring).expect("builtin lattice");
        let mcss = crate::classify::enumerate_mcs(ring, mcs_limit_for(ring.n()));
        for b in &ideals {
            let (_q, proj) = ring.quotient(b).expect("builtin quotient");
            for a in &ideals {
                for s in &mcss {
                    out.push(Instance::Hom {
                        hom: proj.clone(),
                        ideal: *a,
                        mcs: *s,
                    });
                }
            }
        }
    }
    // ring pairs within the product bound
    for (i, left) in rings.iter().enumerate() {
        for right in rings.iter().skip(i) {
            if left.n() * right.n() > 36 {
                continue;
            }
            out.extend(pair_instances(left, right, 2, usize::MAX));
        }
    }
    out
}

fn pair_instances(
    left: &Arc<HyperringTable>,
    right: &Arc<HyperringTable>,
    mcs_max: usize,
    limit: usize,
) -> Vec<Instance> {
    let mut out = Vec::new();
    let Ok(product) = left.direct_product(right, crate::set::CAPACITY) else {
        return out;
    };
    let product = Arc::new(product);
    let (Ok(li), Ok(ri)) = (enumerate_hyperideals(left), enumerate_hyperideals(right)) else {
        return out;
    };
    let lm = crate::classify::enumerate_mcs(left, mcs_max);
    let rm = crate::classify::enumerate_mcs(right, mcs_max);
    'outer: for a1 in &li {
        for a2 in &ri {
            for s1 in &lm {
                for s2 in &rm {
                    if out.len() >= limit {
                        break 'outer;
                    }
                    out.push(Instance::Pair {
                        left: left.clone(),
                        right: right.clone(),
                        product: product.clone(),
                        left_ideal: *a1,
                        right_ideal: *a2,
                        left_mcs: *s1,
                        right_mcs: *s2,
                    });
                }
            }
        }
    }
    out
}

// -------------------------------------------------------------- generation

#[derive(Debug, Clone, Copy)]
pub struct GenLimits {
    /// Largest base-ring carrier explored by the Z_Φ grid.
    pub max_carrier: usize,
    /// Largest direct-product carrier.
    pub product_carrier: usize,
    /// MCS enumeration size bound.
    pub mcs_max: usize,
}

impl Default for GenLimits {
    fn default() -> Self {
        GenLimits {
            max_carrier: 8,
            product_carrier: 16,
            mcs_max: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GenOutput {
    pub instances: Vec<Instance>,
    /// Random tables rejected by validation.
    pub discarded: usize,
    pub notes: Vec<String>,
}

/// Deterministic instance stream: (a) the Z_Φ grid, (b) direct products and
/// componentwise pair instances, (c) quotient projections, (d) random
/// hyperoperation tables over small cyclic groups, validated or discarded.
/// The phases share the `count` budget in the fixed proportions 45/25/20/10;
/// within a phase, sources are drained round-robin so small and large
/// structures both appear early in the stream.
pub fn generate_structures(seed: u64, count: usize, limits: &GenLimits) -> GenOutput {
    let mut notes = Vec::new();
    let budget_d = count / 10;
    let budget_c = count / 5;
    let budget_b = count / 4;
    let budget_a = count - budget_b - budget_c - budget_d;

    // (a) the Z_Φ grid
    let mut base_rings: Vec<Arc<HyperringTable>> = Vec::new();
    let nmax = limits.max_carrier.min(8);
    for n in 1..=nmax {
        let full = (1u64 << n) - 1;
        for mask in 1..=full {
            if mask.count_ones() > 3 {
                continue;
            }
            let phi: Vec<usize> = BitIter(mask).collect();
            if let Ok(ring) = build_zphi(n, &phi) {
                base_rings.push(Arc::new(ring));
            }
        }
    }
    let mut instances = Vec::new();
    let per_ring: Vec<Vec<Instance>> = base_rings
        .iter()
        .map(|r| single_instances_for(r, limits.mcs_max))
        .collect();
    let taken_a = round_robin(per_ring, budget_a, &mut instances);
    if taken_a < budget_a {
        notes.push(format!(
            "zphi phase exhausted after {taken_a} of {budget_a} instances"
        ));
    }

    // (b) products: pair instances plus the product rings as single subjects
    let mut product_sources: Vec<Vec<Instance>> = Vec::new();
    for (i, left) in base_rings.iter().enumerate() {
        if left.n() < 2 {
            continue;
        }
        for right in base_rings.iter().skip(i + 1) {
            if right.n() < 2 || left.n() * right.n() > limits.product_carrier {
                continue;
            }
            let mut chunk = pair_instances(left, right, 2, 8);
            if let Ok(product) = left.direct_product(right, crate::set::CAPACITY) {
                let product = Arc::new(product);
                chunk.extend(single_instances_for(&product, 2).into_iter().take(8));
            }
            if !chunk.is_empty() {
                product_sources.push(chunk);
            }
        }
    }
    let taken_b = round_robin(product_sources, budget_b, &mut instances);
    if taken_b < budget_b {
        notes.push(format!(
            "product phase exhausted after {taken_b} of {budget_b} instances"
        ));
    }

    // (c) quotient projections
    let mut hom_sources: Vec<Vec<Instance>> = Vec::new();
    for ring in &base_rings {
        if ring.n() > nmax {
            continue;
        }
        let Ok(ideals) = enumerate_hyperideals(ring) else {
            continue;
        };
        let mcss = crate::classify::enumerate_mcs(ring, limits.mcs_max);
        for b in &ideals {
            let Ok((_q, proj)) = ring.quotient(b) else {
                continue;
            };
            let mut chunk = Vec::new();
            for a in &ideals {
                for s in &mcss {
                    chunk.push(Instance::Hom {
                        hom: proj.clone(),
                        ideal: *a,
                        mcs: *s,
                    });
                }
            }
            if !chunk.is_empty() {
                hom_sources.push(chunk);
            }
        }
    }
    let taken_c = round_robin(hom_sources, budget_c, &mut instances);
    if taken_c < budget_c {
        notes.push(format!(
            "quotient phase exhausted after {taken_c} of {budget_c} instances"
        ));
    }

    // (d) random symmetric tables over Z_n, validated or discarded
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut discarded = 0usize;
    let mut taken_d = 0usize;
    let attempts = budget_d.saturating_mul(400).max(400);
    for _ in 0..attempts {
        if taken_d >= budget_d {
            break;
        }
        let n = rng.gen_range(2..=4usize);
        let add = (0..n)
            .map(|x| (0..n).map(|y| (x + y) % n).collect())
            .collect();
        let full = (1u64 << n) - 1;
        let mut hyp = vec![vec![Vec::new(); n]; n];
        for x in 0..n {
            for y in x..n {
                let mask = rng.gen_range(1..=full);
                let cell: Vec<usize> = BitIter(mask).collect();
                hyp[x][y] = cell.clone();
                hyp[y][x] = cell;
            }
        }
        match validate(&RawTables { n, add, hyp }) {
            Ok(ring) => {
                let ring = Arc::new(ring);
                for inst in single_instances_for(&ring, limits.mcs_max).into_iter().take(4) {
                    if taken_d >= budget_d {
                        break;
                    }
                    instances.push(inst);
                    taken_d += 1;
                }
            }
            Err(_) => discarded += 1,
        }
    }
    if taken_d < budget_d {
        notes.push(format!(
            "random-table phase produced {taken_d} of {budget_d} instances ({discarded} tables discarded)"
        ));
    } else {
        notes.push(format!("random-table phase discarded {discarded} tables"));
    }

    GenOutput {
        instances,
        discarded,
        notes,
    }
}

fn round_robin(sources: Vec<Vec<Instance>>, budget: usize, out: &mut Vec<Instance>) -> usize {
    let mut iters: Vec<std::vec::IntoIter<Instance>> =
        sources.into_iter().map(|v| v.into_iter()).collect();
    let mut taken = 0usize;
    while taken < budget {
        let mut progressed = false;
        for it in iters.iter_mut() {
            if taken >= budget {
                break;
            }
            if let Some(inst) = it.next() {
                out.push(inst);
                taken += 1;
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    taken
}

#[cfg(test)]
mod tests;

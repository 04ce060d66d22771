//! Catalog check implementations.
//!
//! Every class-membership and radical decision inside a check is routed
//! through an [`Engine`] of function pointers. The production engine is the
//! real classifier; the mutation-detection tests swap in deliberately broken
//! engines and assert that each catalog check can be driven to Fail, which
//! guards the checks against vacuity.

use super::{CheckId, CheckOutcome, FailInfo, Instance};
use crate::classify::{class_holds, is_mcs_mask, HyperidealClass};
use crate::ideals::{
    colon_mask, gen_ideal_mask, is_c_mask, is_ideal_mask, is_prime_mask, lattice,
    radical_primes_mask,
};
use crate::ring::{HyperringTable, RingError};
use crate::set::{render_mask, BitIter};

#[derive(Clone, Copy)]
pub(crate) struct Engine {
    pub radical: fn(&HyperringTable, u64) -> Result<u64, RingError>,
    pub class_holds: fn(&HyperringTable, HyperidealClass, u64, u64, u64) -> bool,
}

impl Default for Engine {
    fn default() -> Self {
        Engine {
            radical: radical_primes_mask,
            class_holds,
        }
    }
}

impl Engine {
    fn rad(&self, g: &HyperringTable, a: u64) -> Result<u64, RingError> {
        (self.radical)(g, a)
    }

    fn cls(
        &self,
        g: &HyperringTable,
        class: HyperidealClass,
        a: u64,
        s: u64,
    ) -> Result<bool, RingError> {
        let rad = self.rad(g, a)?;
        Ok((self.class_holds)(g, class, a, s, rad))
    }
}

macro_rules! try_cap {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(_) => return CheckOutcome::Skip("capacity"),
        }
    };
}

fn fail(inst: &Instance, id: CheckId, description: String) -> CheckOutcome {
    let dump = inst.dump(id, &description);
    CheckOutcome::Fail(Box::new(FailInfo { description, dump }))
}

pub(crate) fn run_check_with(id: CheckId, inst: &Instance, engine: &Engine) -> CheckOutcome {
    match (id, inst) {
        (CheckId::T11, Instance::Single { ring, ideal, mcs }) => {
            t11(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::T12, Instance::Single { ring, ideal, mcs }) => {
            t12(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::PProd, Instance::Single { ring, ideal, mcs }) => {
            p_prod(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::PS1S2, Instance::Single { ring, ideal, mcs }) => {
            p_s1s2(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::PInt, Instance::Single { ring, ideal, mcs }) => {
            p_int(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::TEq3, Instance::Single { ring, ideal, mcs }) => {
            t_eq3(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::P13, Instance::Single { ring, ideal, mcs }) => {
            p13(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::T14, Instance::Single { ring, ideal, mcs }) => {
            t14(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::TQuot, Instance::Single { ring, ideal, mcs }) => {
            t_quot(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::T21, Instance::Single { ring, ideal, mcs }) => {
            t21(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::T23, Instance::Single { ring, ideal, mcs }) => {
            t23(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::T24, Instance::Single { ring, ideal, mcs }) => {
            t24(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::TPure, Instance::Single { ring, ideal, mcs }) => {
            t_pure(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::T41, Instance::Single { ring, ideal, mcs }) => {
            t41(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::T42, Instance::Single { ring, ideal, mcs }) => {
            t42(inst, ring, ideal.set().bits(), mcs.set().bits(), engine)
        }
        (CheckId::THomo, Instance::Hom { hom, ideal, mcs }) => t_homo(
            inst,
            hom,
            ideal.set().bits(),
            mcs.set().bits(),
            engine,
            HyperidealClass::Quasi,
            CheckId::THomo,
        ),
        (CheckId::THomo2, Instance::Hom { hom, ideal, mcs }) => t_homo(
            inst,
            hom,
            ideal.set().bits(),
            mcs.set().bits(),
            engine,
            HyperidealClass::StronglyQuasi,
            CheckId::THomo2,
        ),
        (CheckId::TCart, Instance::Pair { .. }) => {
            t_cart(inst, engine, HyperidealClass::Quasi, CheckId::TCart)
        }
        (CheckId::TCartSq, Instance::Pair { .. }) => {
            t_cart(inst, engine, HyperidealClass::StronglyQuasi, CheckId::TCartSq)
        }
        _ => CheckOutcome::Skip("instance_shape"),
    }
}

// ------------------------------------------------------------- single checks

/// Theorem: a C-hyperideal disjoint from S is quasi S-primary iff its
/// radical is an S-prime hyperideal. Checked in both directions.
fn t11(inst: &Instance, g: &HyperringTable, a: u64, s: u64, e: &Engine) -> CheckOutcome {
    if a & s != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    if !try_cap!(is_c_mask(g, a)).0 {
        return CheckOutcome::Skip("ideal_not_c_hyperideal");
    }
    let lhs = try_cap!(e.cls(g, HyperidealClass::Quasi, a, s));
    let rad = try_cap!(e.rad(g, a));
    let rad_rad = try_cap!(e.rad(g, rad));
    let rhs = (e.class_holds)(g, HyperidealClass::SPrime, rad, s, rad_rad);
    if lhs == rhs {
        CheckOutcome::Pass
    } else {
        fail(
            inst,
            CheckId::T11,
            format!("quasi={lhs} but s_prime(rad={}) is {rhs}", render_mask(rad)),
        )
    }
}

const TUPLE_LEN_MAX: usize = 3;

fn violating_tuple_for(
    g: &HyperringTable,
    items: &[u64],
    a: u64,
    rad: u64,
    t: usize,
) -> Option<Vec<u64>> {
    // first tuple (length 2..=TUPLE_LEN_MAX) whose product lands in `a`
    // while no factor satisfies t∘factor ⊆ rad
    let tmask = 1u64 << t;
    for k in 2..=TUPLE_LEN_MAX {
        let mut idx = vec![0usize; k];
        'odometer: loop {
            let tuple: Vec<u64> = idx.iter().map(|&i| items[i]).collect();
            let mut prod = tuple[0];
            for &m in &tuple[1..] {
                prod = g.prod_mask(prod, m);
            }
            if prod & !a == 0 && !tuple.iter().any(|&m| g.prod_mask(tmask, m) & !rad == 0) {
                return Some(tuple);
            }
            for pos in (0..k).rev() {
                idx[pos] += 1;
                if idx[pos] < items.len() {
                    continue 'odometer;
                }
                idx[pos] = 0;
            }
            break;
        }
    }
    None
}

/// `∃t ∈ S` settling every bounded tuple; on failure returns a violating
/// tuple for the smallest candidate witness.
fn tuple_violation(
    g: &HyperringTable,
    items: &[u64],
    a: u64,
    rad: u64,
    s: u64,
) -> Option<Vec<u64>> {
    let mut first_bad: Option<Vec<u64>> = None;
    for t in BitIter(s) {
        match violating_tuple_for(g, items, a, rad, t) {
            None => return None,
            Some(bad) => {
                if first_bad.is_none() {
                    first_bad = Some(bad);
                }
            }
        }
    }
    first_bad.or_else(|| Some(Vec::new()))
}

/// Theorem: for quasi S-primary C-hyperideals, a single witness settles
/// every finite product of hyperideals (and of elements) landing in A.
/// Forward direction, tuple length bounded by `TUPLE_LEN_MAX`.
fn t12(inst: &Instance, g: &HyperringTable, a: u64, s: u64, e: &Engine) -> CheckOutcome {
    if a & s != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    if !try_cap!(is_c_mask(g, a)).0 {
        return CheckOutcome::Skip("ideal_not_c_hyperideal");
    }
    if !try_cap!(e.cls(g, HyperidealClass::Quasi, a, s)) {
        return CheckOutcome::Skip("ideal_not_quasi");
    }
    let rad = try_cap!(e.rad(g, a));
    let ideals = try_cap!(lattice(g)).ideals.clone();
    if let Some(bad) = tuple_violation(g, &ideals, a, rad, s) {
        let tup: Vec<String> = bad.iter().map(|&m| render_mask(m)).collect();
        return fail(
            inst,
            CheckId::T12,
            format!("no witness settles the hyperideal tuple [{}]", tup.join(",")),
        );
    }
    let elements: Vec<u64> = (0..g.n()).map(|i| 1u64 << i).collect();
    if let Some(bad) = tuple_violation(g, &elements, a, rad, s) {
        let tup: Vec<String> = bad.iter().map(|&m| render_mask(m)).collect();
        return fail(
            inst,
            CheckId::T12,
            format!("no witness settles the element tuple [{}]", tup.join(",")),
        );
    }
    CheckOutcome::Pass
}

/// Proposition: if A is quasi S-primary and B is a C-hyperideal meeting S,
/// then B∘A and A∩B are quasi S-primary.
fn p_prod(inst: &Instance, g: &HyperringTable, a: u64, s: u64, e: &Engine) -> CheckOutcome {
    if a & s != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    if !try_cap!(is_c_mask(g, a)).0 {
        return CheckOutcome::Skip("ideal_not_c_hyperideal");
    }
    if !try_cap!(e.cls(g, HyperidealClass::Quasi, a, s)) {
        return CheckOutcome::Skip("ideal_not_quasi");
    }
    let ideals = try_cap!(lattice(g)).ideals.clone();
    let mut applicable = false;
    for &b in &ideals {
        if b & s == 0 || !try_cap!(is_c_mask(g, b)).0 {
            continue;
        }
        applicable = true;
        let ba = gen_ideal_mask(g, g.prod_mask(b, a));
        if !try_cap!(e.cls(g, HyperidealClass::Quasi, ba, s)) {
            return fail(
                inst,
                CheckId::PProd,
                format!("B∘A = {} is not quasi for B = {}", render_mask(ba), render_mask(b)),
            );
        }
        if !try_cap!(e.cls(g, HyperidealClass::Quasi, a & b, s)) {
            return fail(
                inst,
                CheckId::PProd,
                format!("A∩B = {} is not quasi for B = {}", render_mask(a & b), render_mask(b)),
            );
        }
    }
    if applicable {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Skip("no_c_hyperideal_meets_s")
    }
}

/// Proposition: for S₁ ⊆ S₂ with every t ∈ S₂ compatible back into S₁,
/// quasi S₁-primary and quasi S₂-primary coincide. The instance MCS plays
/// S₁; larger MCSs are enumerated as S₂.
fn p_s1s2(inst: &Instance, g: &HyperringTable, a: u64, s1: u64, e: &Engine) -> CheckOutcome {
    if a & s1 != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    if !try_cap!(is_c_mask(g, a)).0 {
        return CheckOutcome::Skip("ideal_not_c_hyperideal");
    }
    let max = (s1.count_ones() as usize + 2).min(g.n());
    let lhs = try_cap!(e.cls(g, HyperidealClass::Quasi, a, s1));
    let mut applicable = false;
    for s2m in crate::classify::enumerate_mcs(g, max) {
        let s2 = s2m.set().bits();
        if s1 & !s2 != 0 || a & s2 != 0 {
            continue;
        }
        let compatible = BitIter(s2).all(|t| {
            BitIter(s1).any(|w| g.prod_mask(1u64 << t, 1u64 << w) & s1 != 0)
        });
        if !compatible {
            continue;
        }
        applicable = true;
        let rhs = try_cap!(e.cls(g, HyperidealClass::Quasi, a, s2));
        if lhs != rhs {
            return fail(
                inst,
                CheckId::PS1S2,
                format!(
                    "quasi differs between S1 = {} ({lhs}) and S2 = {} ({rhs})",
                    render_mask(s1),
                    render_mask(s2)
                ),
            );
        }
    }
    if applicable {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Skip("no_compatible_s2")
    }
}

/// Proposition: the intersection of quasi S-primary C-hyperideals with a
/// common radical is quasi S-primary. Instanced over lattice partners of
/// the subject ideal.
fn p_int(inst: &Instance, g: &HyperringTable, a: u64, s: u64, e: &Engine) -> CheckOutcome {
    if a & s != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    if !try_cap!(is_c_mask(g, a)).0 {
        return CheckOutcome::Skip("ideal_not_c_hyperideal");
    }
    if !try_cap!(e.cls(g, HyperidealClass::Quasi, a, s)) {
        return CheckOutcome::Skip("ideal_not_quasi");
    }
    let rad_a = try_cap!(e.rad(g, a));
    let ideals = try_cap!(lattice(g)).ideals.clone();
    let mut applicable = false;
    for &b in &ideals {
        if b == a || b & s != 0 || !try_cap!(is_c_mask(g, b)).0 {
            continue;
        }
        if try_cap!(e.rad(g, b)) != rad_a {
            continue;
        }
        if !try_cap!(e.cls(g, HyperidealClass::Quasi, b, s)) {
            continue;
        }
        applicable = true;
        if !try_cap!(e.cls(g, HyperidealClass::Quasi, a & b, s)) {
            return fail(
                inst,
                CheckId::PInt,
                format!(
                    "intersection {} with partner {} is not quasi",
                    render_mask(a & b),
                    render_mask(b)
                ),
            );
        }
    }
    if applicable {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Skip("no_partner_with_equal_radical")
    }
}

fn square_side_condition(g: &HyperringTable, a: u64, s: u64) -> bool {
    // ∃r ∈ S: ∀x: r∘x² ⊆ A ⇒ r∘x ⊆ A, with r independent of any witness.
    BitIter(s).any(|r| {
        let rm = 1u64 << r;
        (0..g.n()).all(|x| {
            let rx2 = g.prod_mask(rm, g.hyp_mask(x, x));
            rx2 & !a != 0 || g.prod_mask(rm, 1u64 << x) & !a == 0
        })
    })
}

/// Unnamed theorem: for a C-hyperideal disjoint from S the following agree:
/// (quasi + square side condition) ⟺ S-prime ⟺ (S-primary + side condition).
fn t_eq3(inst: &Instance, g: &HyperringTable, a: u64, s: u64, e: &Engine) -> CheckOutcome {
    if a & s != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    if !try_cap!(is_c_mask(g, a)).0 {
        return CheckOutcome::Skip("ideal_not_c_hyperideal");
    }
    let side = square_side_condition(g, a, s);
    let s1 = try_cap!(e.cls(g, HyperidealClass::Quasi, a, s)) && side;
    let s2 = try_cap!(e.cls(g, HyperidealClass::SPrime, a, s));
    let s3 = try_cap!(e.cls(g, HyperidealClass::SPrimary, a, s)) && side;
    if s1 == s2 && s2 == s3 {
        CheckOutcome::Pass
    } else {
        fail(
            inst,
            CheckId::TEq3,
            format!("equivalence broken: quasi+side={s1} s_prime={s2} s_primary+side={s3}"),
        )
    }
}

/// Proposition: quasi S-primary ⟺ some (rad(A) : t) is a prime hyperideal.
fn p13(inst: &Instance, g: &HyperringTable, a: u64, s: u64, e: &Engine) -> CheckOutcome {
    if a & s != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    if !try_cap!(is_c_mask(g, a)).0 {
        return CheckOutcome::Skip("ideal_not_c_hyperideal");
    }
    let lhs = try_cap!(e.cls(g, HyperidealClass::Quasi, a, s));
    let rad = try_cap!(e.rad(g, a));
    let rhs = BitIter(s).any(|t| is_prime_mask(g, colon_mask(g, rad, 1u64 << t)));
    if lhs == rhs {
        CheckOutcome::Pass
    } else {
        fail(
            inst,
            CheckId::P13,
            format!("quasi={lhs} but exists-prime-colon={rhs}"),
        )
    }
}

/// Avoidance theorem: an ideal inside a union of quasi S-primary
/// C-hyperideals has `t∘A ⊆ rad(A_j)` for some witness and cover index.
fn t14(inst: &Instance, g: &HyperringTable, a: u64, s: u64, e: &Engine) -> CheckOutcome {
    let ideals = try_cap!(lattice(g)).ideals.clone();
    let mut covers: Vec<(u64, u64)> = Vec::new(); // (ideal, radical)
    for &c in &ideals {
        if c & s != 0 || !try_cap!(is_c_mask(g, c)).0 {
            continue;
        }
        if try_cap!(e.cls(g, HyperidealClass::Quasi, c, s)) {
            covers.push((c, try_cap!(e.rad(g, c))));
        }
    }
    let mut applicable = false;
    for (i, &(c1, r1)) in covers.iter().enumerate() {
        for &(c2, r2) in covers.iter().skip(i) {
            if a & !(c1 | c2) != 0 {
                continue;
            }
            applicable = true;
            let found = BitIter(s).any(|t| {
                let ta = g.prod_mask(1u64 << t, a);
                ta & !r1 == 0 || ta & !r2 == 0
            });
            if !found {
                return fail(
                    inst,
                    CheckId::T14,
                    format!(
                        "no (t,j) for covers {} and {}",
                        render_mask(c1),
                        render_mask(c2)
                    ),
                );
            }
        }
    }
    if applicable {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Skip("no_quasi_c_cover")
    }
}

/// Quotient corollary: a quasi S-primary C-hyperideal containing B maps to
/// a quasi S̄-primary hyperideal of G/B under the canonical projection.
fn t_quot(
    inst: &Instance,
    g: &std::sync::Arc<HyperringTable>,
    a: u64,
    s: u64,
    e: &Engine,
) -> CheckOutcome {
    if a & s != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    if !try_cap!(is_c_mask(g, a)).0 {
        return CheckOutcome::Skip("ideal_not_c_hyperideal");
    }
    if !try_cap!(e.cls(g, HyperidealClass::Quasi, a, s)) {
        return CheckOutcome::Skip("ideal_not_quasi");
    }
    let ideals = try_cap!(crate::ideals::enumerate_hyperideals(g));
    let mut applicable = false;
    for b in &ideals {
        if b.set().bits() & !a != 0 {
            continue;
        }
        applicable = true;
        let Ok((q, proj)) = g.quotient(b) else {
            return CheckOutcome::Skip("capacity");
        };
        let abar = proj.image_mask(a);
        let sbar = proj.image_mask(s);
        if sbar & 1 != 0 {
            // S meets B, impossible under disjointness from A ⊇ B
            continue;
        }
        if !is_mcs_mask(&q, sbar) {
            return fail(
                inst,
                CheckId::TQuot,
                format!("projected MCS {} is not an MCS of the quotient", render_mask(sbar)),
            );
        }
        if !try_cap!(e.cls(&q, HyperidealClass::Quasi, abar, sbar)) {
            return fail(
                inst,
                CheckId::TQuot,
                format!(
                    "A/B = {} not quasi in quotient by B = {}",
                    render_mask(abar),
                    render_mask(b.set().bits())
                ),
            );
        }
    }
    if applicable {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Skip("no_contained_hyperideal")
    }
}

/// Theorem: if A is weakly quasi S-primary, A is a C-hyperideal, and the
/// zero hyperideal is a quasi S-primary C-hyperideal, then rad(A) is
/// S-prime.
fn t21(inst: &Instance, g: &HyperringTable, a: u64, s: u64, e: &Engine) -> CheckOutcome {
    if a & s != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    if !try_cap!(is_c_mask(g, a)).0 {
        return CheckOutcome::Skip("ideal_not_c_hyperideal");
    }
    let zero = gen_ideal_mask(g, 1);
    if !try_cap!(is_c_mask(g, zero)).0 {
        return CheckOutcome::Skip("zero_ideal_not_c_hyperideal");
    }
    if !try_cap!(e.cls(g, HyperidealClass::Quasi, zero, s)) {
        return CheckOutcome::Skip("zero_ideal_not_quasi");
    }
    if !try_cap!(e.cls(g, HyperidealClass::WeaklyQuasi, a, s)) {
        return CheckOutcome::Skip("ideal_not_weakly_quasi");
    }
    let rad = try_cap!(e.rad(g, a));
    let rad_rad = try_cap!(e.rad(g, rad));
    if (e.class_holds)(g, HyperidealClass::SPrime, rad, s, rad_rad) {
        CheckOutcome::Pass
    } else {
        fail(
            inst,
            CheckId::T21,
            format!("rad(A) = {} is not S-prime", render_mask(rad)),
        )
    }
}

/// Theorem: four characterizations of weakly quasi S-primary hyperideals
/// (colon form, element-ideal form, ideal-ideal form) agree when A and the
/// zero hyperideal are C-hyperideals. `x∘B = 0` is read as containment in
/// the generated zero hyperideal.
fn t23(inst: &Instance, g: &HyperringTable, a: u64, s: u64, e: &Engine) -> CheckOutcome {
    if a & s != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    if !try_cap!(is_c_mask(g, a)).0 {
        return CheckOutcome::Skip("ideal_not_c_hyperideal");
    }
    let zero = gen_ideal_mask(g, 1);
    if !try_cap!(is_c_mask(g, zero)).0 {
        return CheckOutcome::Skip("zero_ideal_not_c_hyperideal");
    }
    let rad = try_cap!(e.rad(g, a));
    let ideals = try_cap!(lattice(g)).ideals.clone();

    let s1 = try_cap!(e.cls(g, HyperidealClass::WeaklyQuasi, a, s));
    let s2 = BitIter(s).any(|t| {
        let rad_t = colon_mask(g, rad, 1u64 << t);
        (0..g.n()).filter(|&x| rad_t & (1u64 << x) == 0).all(|x| {
            let ax = colon_mask(g, a, 1u64 << x);
            ax == colon_mask(g, zero, 1u64 << x) || ax & !rad_t == 0
        })
    });
    let s3 = BitIter(s).any(|t| {
        let tm = 1u64 << t;
        ideals.iter().all(|&b| {
            (0..g.n()).all(|x| {
                let xb = g.prod_mask(1u64 << x, b);
                xb & !zero == 0
                    || xb & !a != 0
                    || g.prod_mask(tm, 1u64 << x) & !rad == 0
                    || g.prod_mask(tm, b) & !rad == 0
            })
        })
    });
    let s4 = BitIter(s).any(|t| {
        let tm = 1u64 << t;
        ideals.iter().all(|&b| {
            ideals.iter().all(|&d| {
                let bd = g.prod_mask(b, d);
                bd & !zero == 0
                    || bd & !a != 0
                    || g.prod_mask(tm, b) & !rad == 0
                    || g.prod_mask(tm, d) & !rad == 0
            })
        })
    });
    if s1 == s2 && s2 == s3 && s3 == s4 {
        CheckOutcome::Pass
    } else {
        fail(
            inst,
            CheckId::T23,
            format!("characterizations disagree: weakly={s1} colon={s2} elem_ideal={s3} ideal_ideal={s4}"),
        )
    }
}

/// Theorem, both parts: (i) weakly quasi with A² ≠ ⟨0⟩ is quasi;
/// (ii) weakly quasi but not quasi forces rad(A) = rad(⟨0⟩).
fn t24(inst: &Instance, g: &HyperringTable, a: u64, s: u64, e: &Engine) -> CheckOutcome {
    if a & s != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    if !try_cap!(is_c_mask(g, a)).0 {
        return CheckOutcome::Skip("ideal_not_c_hyperideal");
    }
    let zero = gen_ideal_mask(g, 1);
    if !try_cap!(is_c_mask(g, zero)).0 {
        return CheckOutcome::Skip("zero_ideal_not_c_hyperideal");
    }
    let w = try_cap!(e.cls(g, HyperidealClass::WeaklyQuasi, a, s));
    let q = try_cap!(e.cls(g, HyperidealClass::Quasi, a, s));
    let a_sq = gen_ideal_mask(g, g.prod_mask(a, a));
    if w && a_sq != zero && !q {
        return fail(
            inst,
            CheckId::T24,
            format!("weakly quasi with A² = {} ≠ ⟨0⟩ but not quasi", render_mask(a_sq)),
        );
    }
    if w && !q {
        let rad_a = try_cap!(e.rad(g, a));
        let rad_zero = try_cap!(e.rad(g, zero));
        if rad_a != rad_zero {
            return fail(
                inst,
                CheckId::T24,
                format!(
                    "weakly-not-quasi but rad(A) = {} differs from rad(⟨0⟩) = {}",
                    render_mask(rad_a),
                    render_mask(rad_zero)
                ),
            );
        }
    }
    CheckOutcome::Pass
}

/// Theorem: a pure, weakly-quasi-but-not-quasi hyperideal equals ⟨0⟩,
/// provided ⟨0⟩ is a C-hyperideal.
fn t_pure(inst: &Instance, g: &HyperringTable, a: u64, s: u64, e: &Engine) -> CheckOutcome {
    if a & s != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    let zero = gen_ideal_mask(g, 1);
    if !try_cap!(is_c_mask(g, zero)).0 {
        return CheckOutcome::Skip("zero_ideal_not_c_hyperideal");
    }
    let w = try_cap!(e.cls(g, HyperidealClass::WeaklyQuasi, a, s));
    let q = try_cap!(e.cls(g, HyperidealClass::Quasi, a, s));
    let pure = BitIter(a).all(|x| g.prod_mask(1u64 << x, a) & (1u64 << x) != 0);
    if w && !q && pure && a != zero {
        fail(
            inst,
            CheckId::TPure,
            format!("pure weakly-not-quasi ideal {} differs from ⟨0⟩", render_mask(a)),
        )
    } else {
        CheckOutcome::Pass
    }
}

/// Theorem: under the side condition `∃t ∈ S: t∘rad(A)² ⊆ A`, strongly
/// quasi S-primary and quasi S-primary coincide.
fn t41(inst: &Instance, g: &HyperringTable, a: u64, s: u64, e: &Engine) -> CheckOutcome {
    if a & s != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    if !try_cap!(is_c_mask(g, a)).0 {
        return CheckOutcome::Skip("ideal_not_c_hyperideal");
    }
    let rad = try_cap!(e.rad(g, a));
    let rad_sq = g.prod_mask(rad, rad);
    if !BitIter(s).any(|t| g.prod_mask(1u64 << t, rad_sq) & !a == 0) {
        return CheckOutcome::Skip("side_condition_unmet");
    }
    let strongly = try_cap!(e.cls(g, HyperidealClass::StronglyQuasi, a, s));
    let quasi = try_cap!(e.cls(g, HyperidealClass::Quasi, a, s));
    if strongly == quasi {
        CheckOutcome::Pass
    } else {
        fail(
            inst,
            CheckId::T41,
            format!("strongly_quasi={strongly} but quasi={quasi} under the side condition"),
        )
    }
}

fn powers_reach(g: &HyperringTable, u: usize, target: u64) -> bool {
    let base = 1u64 << u;
    let mut p = base;
    let mut seen: Vec<u64> = Vec::new();
    loop {
        if p & !target == 0 {
            return true;
        }
        if seen.contains(&p) {
            return false;
        }
        seen.push(p);
        p = g.prod_mask(p, base);
    }
}

/// Theorem: five characterizations of strongly quasi S-primary hyperideals
/// agree for C-hyperideals: the definition, the saturation variant, and
/// three colon/square forms.
fn t42(inst: &Instance, g: &HyperringTable, a: u64, s: u64, e: &Engine) -> CheckOutcome {
    if a & s != 0 {
        return CheckOutcome::Skip("not_disjoint");
    }
    if !try_cap!(is_c_mask(g, a)).0 {
        return CheckOutcome::Skip("ideal_not_c_hyperideal");
    }
    let rad = try_cap!(e.rad(g, a));
    let ideals = try_cap!(lattice(g)).ideals.clone();

    let s1 = (e.class_holds)(g, HyperidealClass::StronglyQuasi, a, s, rad);
    let sat = {
        let mut out = 0u64;
        for x in 0..g.n() {
            if (0..g.n()).any(|b| g.hyp_mask(x, b) & s != 0) {
                out |= 1u64 << x;
            }
        }
        out
    };
    let s2 = a & sat == 0 && (e.class_holds)(g, HyperidealClass::StronglyQuasi, a, sat, rad);
    let s3 = BitIter(s).any(|t| {
        let at = colon_mask(g, a, 1u64 << t);
        let rad_t = colon_mask(g, rad, 1u64 << t);
        (0..g.n()).all(|u| {
            g.hyp_mask(u, u) & !at == 0 || colon_mask(g, a, 1u64 << u) & !rad_t == 0
        })
    });
    let s4 = BitIter(s).any(|t| {
        let tm = 1u64 << t;
        ideals.iter().all(|&b| {
            let b_sq: u64 = BitIter(b).fold(0, |acc, x| acc | g.hyp_mask(x, x));
            ideals.iter().all(|&c| {
                g.prod_mask(b, c) & !a != 0
                    || g.prod_mask(tm, b_sq) & !a == 0
                    || g.prod_mask(tm, c) & !rad == 0
            })
        })
    });
    let s5 = BitIter(s).any(|t| {
        let at = colon_mask(g, a, 1u64 << t);
        (0..g.n()).all(|u| {
            if powers_reach(g, u, at) {
                return true;
            }
            let au = colon_mask(g, a, 1u64 << u);
            let d_sq: u64 = BitIter(au).fold(0, |acc, d| acc | g.hyp_mask(d, d));
            d_sq & !at == 0
        })
    });
    if s1 == s2 && s2 == s3 && s3 == s4 && s4 == s5 {
        CheckOutcome::Pass
    } else {
        fail(
            inst,
            CheckId::T42,
            format!(
                "characterizations disagree: def={s1} saturation={s2} colon={s3} ideal_square={s4} power_colon={s5}"
            ),
        )
    }
}

// ------------------------------------------------------------- hom and pair

/// Homomorphism transport (forward): preimages of quasi (resp. strongly
/// quasi) η(S)-primary C-hyperideals are quasi (strongly quasi) S-primary,
/// and surjective images with kernel inside the ideal transport forward.
fn t_homo(
    inst: &Instance,
    hom: &crate::homs::GoodHom,
    a: u64,
    s: u64,
    e: &Engine,
    class: HyperidealClass,
    id: CheckId,
) -> CheckOutcome {
    let g1 = hom.source();
    let g2 = hom.target();
    let hs = hom.image_mask(s);
    if hs & 1 != 0 {
        return CheckOutcome::Skip("zero_in_image_of_mcs");
    }
    if !is_mcs_mask(g2, hs) {
        return CheckOutcome::Skip("image_not_mcs");
    }
    let mut applicable = false;
    // (i) preimages
    let target_ideals = try_cap!(lattice(g2)).ideals.clone();
    for &a2 in &target_ideals {
        if !try_cap!(is_c_mask(g2, a2)).0 {
            continue;
        }
        if !try_cap!(e.cls(g2, class, a2, hs)) {
            continue;
        }
        applicable = true;
        let pre = hom.preimage_mask(a2);
        if !try_cap!(e.cls(g1, class, pre, s)) {
            return fail(
                inst,
                id,
                format!(
                    "preimage {} of {} fails the class",
                    render_mask(pre),
                    render_mask(a2)
                ),
            );
        }
    }
    // (ii) images
    if a & s == 0
        && hom.is_surjective()
        && hom.kernel().bits() & !a == 0
        && try_cap!(is_c_mask(g1, a)).0
        && try_cap!(e.cls(g1, class, a, s))
    {
        applicable = true;
        let img = hom.image_mask(a);
        if !is_ideal_mask(g2, img) {
            return fail(
                inst,
                id,
                format!("image {} is not a hyperideal", render_mask(img)),
            );
        }
        if !try_cap!(e.cls(g2, class, img, hs)) {
            return fail(
                inst,
                id,
                format!("image {} fails the class in the target", render_mask(img)),
            );
        }
    }
    if applicable {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Skip("hypotheses_unmet")
    }
}

fn embed_product(n_right: usize, left: u64, right: u64) -> u64 {
    let mut out = 0u64;
    for i in BitIter(left) {
        for j in BitIter(right) {
            out |= 1u64 << (i * n_right + j);
        }
    }
    out
}

/// Product theorem (quasi and strongly quasi variants): A₁×A₂ has the class
/// relative to S₁×S₂ iff one factor meets its MCS and the other has the
/// class. Checked as a biconditional.
fn t_cart(inst: &Instance, e: &Engine, class: HyperidealClass, id: CheckId) -> CheckOutcome {
    let Instance::Pair {
        left,
        right,
        product,
        left_ideal,
        right_ideal,
        left_mcs,
        right_mcs,
    } = inst
    else {
        return CheckOutcome::Skip("instance_shape");
    };
    let a1 = left_ideal.set().bits();
    let a2 = right_ideal.set().bits();
    let s1 = left_mcs.set().bits();
    let s2 = right_mcs.set().bits();
    if !try_cap!(is_c_mask(left, a1)).0 || !try_cap!(is_c_mask(right, a2)).0 {
        return CheckOutcome::Skip("factor_not_c_hyperideal");
    }
    let a = embed_product(right.n(), a1, a2);
    let s = embed_product(right.n(), s1, s2);
    let lhs = try_cap!(e.cls(product, class, a, s));
    let rhs = (s1 & a1 != 0 && try_cap!(e.cls(right, class, a2, s2)))
        || (s2 & a2 != 0 && try_cap!(e.cls(left, class, a1, s1)));
    if lhs == rhs {
        CheckOutcome::Pass
    } else {
        fail(
            inst,
            id,
            format!("product class={lhs} but factor condition={rhs}"),
        )
    }
}

//! Membership tests for the decomposition regions.
//!
//! Three families appear in the loss integrals:
//!
//! * the `G` family: tuples whose associated sums admit an asymptotic
//!   formula through bilinear (two-block) or trilinear (three-block)
//!   estimates, extended to higher arities by grouping tuple entries into
//!   blocks;
//! * the `D` family: tuples allowing one or more further direct
//!   decomposition steps (two Buchstab iterations per step), in plain and
//!   simplified ("primed") forms, plus role-reversed variants;
//! * the planar regions `A`, `B`, `C`, `H` and their subdivisions that
//!   partition the two-variable integration domain.
//!
//! The block-grouping ("lift") rules are configurable through [`Policy`]
//! because the residual mass `1 - sum` of a tuple is itself a legitimate
//! block component in some of the underlying estimates; which tests may
//! consume it is a modelling choice that materially changes the numbers.

use crate::params::{alpha_star, gamma, nu, nu_min};
use crate::tables::{FIVE_PART_ROWS, FOUR_PART_ROWS};
use once_cell::sync::Lazy;

const EPS: f64 = 1e-12;

/// Where the residual mass may participate as a block component in the
/// block-grouping test for the `G` family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidualUse {
    /// Blocks are drawn from tuple entries only.
    Never,
    /// The residual may join a block for tuples of length >= 2.
    FromPairs,
    /// The residual may join a block for tuples of length >= 3.
    FromTriples,
    /// The residual may join a block for tuples of length >= 4.
    FromQuadruples,
    /// The residual may join a block for tuples of length >= 5.
    FromQuintuples,
}

impl ResidualUse {
    fn allows(self, tuple_len: usize) -> bool {
        match self {
            ResidualUse::Never => false,
            ResidualUse::FromPairs => tuple_len >= 2,
            ResidualUse::FromTriples => tuple_len >= 3,
            ResidualUse::FromQuadruples => tuple_len >= 4,
            ResidualUse::FromQuintuples => tuple_len >= 5,
        }
    }
}

/// Tunable conventions for the block-grouping tests.
#[derive(Clone, Copy, Debug)]
pub struct Policy {
    /// Residual participation in the two-block (bilinear) test as a block
    /// component that may merge with tuple entries.
    pub residual_two_block: ResidualUse,
    /// Residual participation in the two-block test as a standalone block:
    /// the residual alone forms one block and some subset of the entries
    /// forms the other.
    pub residual_standalone_two_block: ResidualUse,
    /// Residual participation in the three-block (trilinear) test.
    pub residual_three_block: ResidualUse,
    /// Whether the direct four/five-part threshold rows are consulted for
    /// tuples of arity >= 4 (in addition to block groupings).
    pub direct_rows: bool,
    /// Whether blocks must cover every tuple entry (unused entries join
    /// the residual when `false`).
    pub covering_only: bool,
    /// Extended admissibility for the repeated-entry two-step test (see
    /// [`Ctx::in_d_star`]): also accept plain (non-primed) two-block
    /// groupings when the smaller part or a duplicated entry sits in the
    /// second role.
    pub extended_two_step: bool,
    /// Small-last-entry direct lift: a tuple joins the `G` family when its
    /// entries partition into two or three blocks satisfying the
    /// direct-decomposition criteria and the last (smallest) entry sits at
    /// or below the admissible sieve level of the leading block. At arity 2
    /// this rule is what carves the lower boundary of region `C`.
    pub nu_lift: NuLift,
    /// Largest tuple arity at which the trilinear combination table is
    /// consulted (grouped blocks still count against the original arity).
    pub tri_combo_max_arity: usize,
    /// Largest tuple arity at which the closed trilinear rows are
    /// consulted.
    pub closed_rows_max_arity: usize,
    /// Extended admissibility for the three- and five-tuple repeated-entry
    /// tests ([`in_d_plus`] / [`in_d_plus_plus`]), mirroring
    /// `extended_two_step` for the four- and six-tuple ones.
    pub extended_plus: bool,
    /// Verbatim reading of the final six-variable loss row's inner sum,
    /// which omits the fourth variable (`true`, the default); `false`
    /// switches to the corrected reading that includes it.
    pub eq13_bound_as_printed: bool,
}

/// How far the small-last-entry lift reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NuLift {
    /// No lift beyond the baseline sieve level.
    Off,
    /// The leading block must be the first entry, the second entry, or
    /// their union; the admissible sieve level is taken from that block.
    FirstTwo,
    /// Any covering partition may supply the leading block.
    Full,
}

impl Default for Policy {
    fn default() -> Self {
        Policy {
            residual_two_block: ResidualUse::Never,
            residual_standalone_two_block: ResidualUse::Never,
            residual_three_block: ResidualUse::Never,
            direct_rows: true,
            covering_only: false,
            extended_two_step: true,
            nu_lift: NuLift::Off,
            tri_combo_max_arity: usize::MAX,
            closed_rows_max_arity: usize::MAX,
            extended_plus: false,
            eq13_bound_as_printed: true,
        }
    }
}

/// Evaluation context: a fixed `theta` with cached derived parameters and
/// the lift policy.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub theta: f64,
    pub gamma: f64,
    pub nu0: f64,
    pub policy: Policy,
}

impl Ctx {
    pub fn new(theta: f64, policy: Policy) -> Self {
        Ctx {
            theta,
            gamma: gamma(theta),
            nu0: nu_min(theta),
            policy,
        }
    }

    pub fn with_default_policy(theta: f64) -> Self {
        Ctx::new(theta, Policy::default())
    }
}

// ---------------------------------------------------------------------------
// G family
// ---------------------------------------------------------------------------

/// Two-block (bilinear) admissibility for block sums `(a, b)`.
pub fn two_block_ok(ctx: &Ctx, a: f64, b: f64) -> bool {
    (a - b).abs() < 2.0 * ctx.theta - 1.0 && a + b > 1.0 - ctx.gamma
}

/// One parameter choice of the discrete trilinear criterion: a divisor `d`
/// plus seven linear forms `(c1, c2, c3, rhs)` that must all satisfy
/// `c1*a1 + c2*a2 + c3*a3 > rhs*(1-theta)`.
struct TriCombo {
    d: f64,
    rows: [(f64, f64, f64, f64); 7],
}

static TRI_COMBOS: Lazy<Vec<TriCombo>> = Lazy::new(|| {
    let mut combos = Vec::with_capacity(48);
    for d in [4.0f64, 5.0] {
        let u = 1.0 - 1.0 / (2.0 * d);
        let (b1, c1) = (1.0 / 3.0 - 1.0 / (2.0 * d), 1.0 / 6.0);
        let (a2, c2) = (7.0 / 12.0 - 1.0 / (2.0 * d), 1.0 / 6.0);
        let opts3 = [(1.0 / 3.0 - 1.0 / (2.0 * d), 1.0 / 6.0), (0.25, 0.25 - 1.0 / (2.0 * d))];
        let opts4 = [(0.5, 0.25 - 1.0 / (2.0 * d)), (7.0 / 12.0 - 1.0 / (2.0 * d), 1.0 / 6.0)];
        let opts5 = [
            (0.5, 1.0 / 3.0 - 1.0 / (2.0 * d), 1.0 / 6.0),
            (7.0 / 12.0 - 1.0 / (2.0 * d), 0.25, 1.0 / 6.0),
        ];
        let opts6 = [
            (0.5, 0.25, 0.25 - 1.0 / (2.0 * d)),
            (7.0 / 12.0 - 1.0 / (2.0 * d), 0.25, 1.0 / 6.0),
            (0.5, 1.0 / 3.0 - 1.0 / (2.0 * d), 1.0 / 6.0),
        ];
        for (b3, c3) in opts3 {
            for (a4, c4) in opts4 {
                for (a5, b5, c5) in opts5 {
                    for (a6, b6, c6) in opts6 {
                        combos.push(TriCombo {
                            d,
                            rows: [
                                (0.0, 0.25 + b1, 0.25 - 1.5 * c1, b1),
                                (0.25 + 0.5 * a2, 0.0, 0.25 - 1.5 * c2, a2),
                                (0.0, 0.25 + b3, 0.25 + 1.5 * c3, u - 0.5),
                                (0.25 + 0.5 * a4, 0.0, 0.25 + 1.5 * c4, u - 0.25),
                                (0.25 + 0.5 * a5, 0.25 + b5, 0.25 - 1.5 * c5, a5 + b5),
                                (0.25 + 0.5 * a6, 0.25 + b6, 0.25 + 1.5 * c6, u),
                                (0.0, 0.0, 1.5 * (u - 0.75) + 0.25, u - 0.75),
                            ],
                        });
                    }
                }
            }
        }
    }
    combos
});

fn tri_combo_ok(theta: f64, a1: f64, a2: f64, a3: f64) -> bool {
    let rem = 1.0 - a1 - a2 - a3;
    let omt = 1.0 - theta;
    TRI_COMBOS.iter().any(|c| {
        rem >= omt / c.d - EPS
            && c
                .rows
                .iter()
                .all(|&(x, y, z, r)| x * a1 + y * a2 + z * a3 > r * omt)
    })
}

/// Three-block (trilinear) admissibility for block sums, scanned over all
/// orderings. Consists of four closed-form threshold rows plus the
/// discrete parameter family above. The residual mass entering the rows is
/// the full leftover `1 - (s1 + s2 + s3)`. `arity` is the length of the
/// original tuple the blocks were drawn from; the policy may switch off
/// the rows or the parameter family above a chosen arity.
pub fn three_block_ok(ctx: &Ctx, s: [f64; 3], arity: usize) -> bool {
    let use_rows = arity <= ctx.policy.closed_rows_max_arity;
    let use_combos = arity <= ctx.policy.tri_combo_max_arity;
    if !use_rows && !use_combos {
        return false;
    }
    let omt = 1.0 - ctx.theta;
    let rem0 = 1.0 - s[0] - s[1] - s[2];
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for p in PERMS {
        let (a1, a2, a3) = (s[p[0]], s[p[1]], s[p[2]]);
        if use_rows {
            if a1 >= omt && a2 >= omt / 2.0 && a3 >= omt / 4.0 && rem0 >= 2.0 * omt / 7.0 {
                return true;
            }
            if a1 >= omt && a2 >= omt / 2.0 && a3 >= omt / 3.0 && rem0 >= 2.0 * omt / 11.0 {
                return true;
            }
            if a1 >= omt
                && a2 >= omt / 3.0
                && 1.0 - a1 - a2 + a3 >= omt
                && rem0 >= 2.0 * omt / 5.0
            {
                return true;
            }
            if a1 >= omt
                && a2 <= omt / 3.0
                && a3 <= omt / 3.0
                && a2 + a3 >= 4.0 * omt / 7.0
                && 1.0 - a1 >= 14.0 * omt / 13.0
            {
                return true;
            }
        }
        if use_combos && tri_combo_ok(ctx.theta, a1, a2, a3) {
            return true;
        }
    }
    false
}

/// Direct threshold-row admissibility for a full tuple against a table of
/// divisor rows (arities 4 and 5).
fn rows_ok(theta: f64, t: &[f64], divisors: &[&[f64]]) -> bool {
    let omt = 1.0 - theta;
    let mut s: Vec<f64> = t.to_vec();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rem: f64 = 1.0 - t.iter().sum::<f64>();
    'rows: for row in divisors {
        let cr = *row.last().unwrap();
        if rem < 2.0 * omt / cr - EPS {
            continue;
        }
        // implicit leading divisors 1 and 2
        if s[0] < omt - EPS || s[1] < omt / 2.0 - EPS {
            continue;
        }
        for (i, &c) in row[..row.len() - 1].iter().enumerate() {
            if s[i + 2] < omt / c - EPS {
                continue 'rows;
            }
        }
        return true;
    }
    false
}

fn four_part_rows_ok(theta: f64, t: &[f64]) -> bool {
    let rows: Vec<[f64; 3]> = FOUR_PART_ROWS.iter().map(|&(a, b, c)| [a, b, c]).collect();
    let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
    rows_ok(theta, t, &refs)
}

fn five_part_rows_ok(theta: f64, t: &[f64]) -> bool {
    let rows: Vec<[f64; 4]> =
        FIVE_PART_ROWS.iter().map(|&(a, b, c, d)| [a, b, c, d]).collect();
    let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
    rows_ok(theta, t, &refs)
}

/// Enumerates groupings of `els` into exactly `nblocks` non-empty blocks
/// (plus unused elements when `allow_unused`), invoking `test` on each
/// block-sum vector. Returns early on the first success.
fn any_grouping<F: FnMut(&[f64]) -> bool>(
    els: &[f64],
    nblocks: usize,
    allow_unused: bool,
    test: &mut F,
) -> bool {
    fn rec<F: FnMut(&[f64]) -> bool>(
        els: &[f64],
        i: usize,
        sums: &mut Vec<f64>,
        nblocks: usize,
        allow_unused: bool,
        test: &mut F,
    ) -> bool {
        if i == els.len() {
            return sums.len() == nblocks && test(sums);
        }
        // prune: not enough elements left to open the remaining blocks
        let remaining = els.len() - i;
        let needed = nblocks - sums.len();
        if remaining < needed {
            return false;
        }
        // join an existing block
        for j in 0..sums.len() {
            sums[j] += els[i];
            if rec(els, i + 1, sums, nblocks, allow_unused, test) {
                sums[j] -= els[i];
                return true;
            }
            sums[j] -= els[i];
        }
        // open a new block
        if sums.len() < nblocks {
            sums.push(els[i]);
            if rec(els, i + 1, sums, nblocks, allow_unused, test) {
                sums.pop();
                return true;
            }
            sums.pop();
        }
        // leave unused
        if allow_unused && remaining > needed {
            if rec(els, i + 1, sums, nblocks, allow_unused, test) {
                return true;
            }
        }
        false
    }
    let mut sums = Vec::with_capacity(nblocks);
    rec(els, 0, &mut sums, nblocks, allow_unused, test)
}

/// Restricted small-last-entry lift: the leading block must be the first
/// entry, the second entry, or their union; the remaining entries form
/// the other one or two blocks (all bipartitions, both role orders). The
/// admissible sieve level for the last entry is taken from the leading
/// block alone.
fn nu_lift_first_two(ctx: &Ctx, t: &[f64]) -> bool {
    let n = t.len();
    let last = *t.last().unwrap();
    if last > ctx.gamma + EPS {
        return false;
    }
    let mut cands: Vec<(f64, Vec<f64>)> = Vec::with_capacity(3);
    cands.push((t[0], t[1..].to_vec()));
    let mut swapped = vec![t[0]];
    swapped.extend_from_slice(&t[2..]);
    cands.push((t[1], swapped));
    if n >= 3 {
        cands.push((t[0] + t[1], t[2..].to_vec()));
    }
    for (m, rest) in cands {
        if m >= 0.5 || last > nu(ctx.theta, m) + EPS {
            continue;
        }
        let total: f64 = rest.iter().sum();
        if d0_ok(ctx, m, total, false) {
            return true;
        }
        let r = rest.len();
        if r >= 2 {
            for mask in 1u32..(1 << (r - 1)) {
                let (mut a, mut b) = (0.0, 0.0);
                for (i, &v) in rest.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        a += v;
                    } else {
                        b += v;
                    }
                }
                if d12_ok(ctx, m, a, b, false) || d12_ok(ctx, m, b, a, false) {
                    return true;
                }
            }
        }
    }
    false
}

/// Membership in the lifted `G` family for a tuple of arity >= 2.
///
/// A tuple qualifies when some grouping of its entries (and, policy
/// permitting, the residual mass) into two or three blocks passes the
/// bilinear or trilinear admissibility test, or — for arities 4 and 5 with
/// `direct_rows` enabled — when the sorted tuple passes a direct threshold
/// row.
pub fn in_g(ctx: &Ctx, t: &[f64]) -> bool {
    let n = t.len();
    debug_assert!(n >= 2);
    if n == 2 && two_block_ok(ctx, t[0], t[1]) {
        return true;
    }
    let residual = 1.0 - t.iter().sum::<f64>();
    let allow_unused = !ctx.policy.covering_only;

    let mut with_res: Vec<f64> = Vec::with_capacity(n + 1);
    with_res.extend_from_slice(t);
    with_res.push(residual);

    // two-block test, optionally with the residual as an extra element
    // (an unused residual element reproduces the plain test, so passing
    // the extended element list subsumes both when unused slots exist)
    if ctx.policy.residual_two_block.allows(n) {
        if any_grouping(&with_res, 2, true, &mut |s| two_block_ok(ctx, s[0], s[1])) {
            return true;
        }
    } else if any_grouping(t, 2, allow_unused, &mut |s| two_block_ok(ctx, s[0], s[1])) {
        return true;
    }

    // two-block test with the residual alone as one of the blocks
    if ctx.policy.residual_standalone_two_block.allows(n)
        && any_grouping(t, 1, true, &mut |s| two_block_ok(ctx, s[0], residual))
    {
        return true;
    }

    // three-block test
    if ctx.policy.residual_three_block.allows(n) {
        if any_grouping(&with_res, 3, true, &mut |s| {
            three_block_ok(ctx, [s[0], s[1], s[2]], n)
        }) {
            return true;
        }
    } else if any_grouping(t, 3, allow_unused, &mut |s| {
        three_block_ok(ctx, [s[0], s[1], s[2]], n)
    }) {
        return true;
    }

    // small-last-entry direct lift: covering partitions into the two- or
    // three-block direct-decomposition shapes, with the sieve level (the
    // last tuple entry) at or below the leading block's admissible level
    match ctx.policy.nu_lift {
        NuLift::Off => {}
        NuLift::FirstTwo => {
            if nu_lift_first_two(ctx, t) {
                return true;
            }
        }
        NuLift::Full => {
            let last = *t.last().unwrap();
            if last <= ctx.gamma + EPS {
                if any_partition_roles(t, 2, &mut |s| {
                    d0_ok(ctx, s[0], s[1], false) && last <= nu(ctx.theta, s[0]) + EPS
                }) {
                    return true;
                }
                if n >= 3
                    && any_partition_roles(t, 3, &mut |s| {
                        d12_ok(ctx, s[0], s[1], s[2], false) && last <= nu(ctx.theta, s[0]) + EPS
                    })
                {
                    return true;
                }
            }
        }
    }

    // direct threshold rows on covering groupings into 4 or 5 blocks
    if ctx.policy.direct_rows {
        if n >= 4 && any_grouping(t, 4, false, &mut |s| four_part_rows_ok(ctx.theta, s)) {
            return true;
        }
        if n >= 5 && any_grouping(t, 5, false, &mut |s| five_part_rows_ok(ctx.theta, s)) {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// D family
// ---------------------------------------------------------------------------

fn star_or_half(ctx: &Ctx, m: f64, primed: bool) -> f64 {
    if primed {
        0.5
    } else {
        alpha_star(ctx.theta, m)
    }
}

/// Two-variable direct-decomposition region (plain or primed).
pub fn d0_ok(ctx: &Ctx, m: f64, n: f64, primed: bool) -> bool {
    if !(0.0..=0.5).contains(&m) || n < 0.0 {
        return false;
    }
    let th = ctx.theta;
    let a = star_or_half(ctx, m, primed);
    n <= ((3.0 * th + 1.0 - 4.0 * a) / 2.0).min((3.0 + th - 4.0 * a) / 5.0)
}

/// Three-variable direct-decomposition region (union of the two criteria,
/// plain or primed).
pub fn d12_ok(ctx: &Ctx, m: f64, n: f64, h: f64, primed: bool) -> bool {
    if !(0.0..=0.5).contains(&m) {
        return false;
    }
    let th = ctx.theta;
    let a = star_or_half(ctx, m, primed);
    if h <= (1.0 + 3.0 * th) / 4.0 - a
        && 2.0 * n + h <= 1.0 + th - 2.0 * a
        && 2.0 * n + 3.0 * h <= (3.0 + th) / 2.0 - 2.0 * a
    {
        return true;
    }
    n <= (1.0 - th) / 2.0 && h <= (1.0 + 3.0 * th - 4.0 * a) / 8.0
}

/// Enumerates covering partitions of `t` into exactly `nblocks` blocks,
/// calling `test` with the block sums in every role order.
fn any_partition_roles<F: FnMut(&[f64]) -> bool>(t: &[f64], nblocks: usize, test: &mut F) -> bool {
    any_grouping(t, nblocks, false, &mut |sums| {
        // all role permutations of the block sums
        let mut s: Vec<f64> = sums.to_vec();
        permute_any(&mut s, 0, test)
    })
}

fn permute_any<F: FnMut(&[f64]) -> bool>(s: &mut [f64], k: usize, test: &mut F) -> bool {
    if k == s.len() {
        return test(s);
    }
    for i in k..s.len() {
        s.swap(k, i);
        if permute_any(s, k + 1, test) {
            s.swap(k, i);
            return true;
        }
        s.swap(k, i);
    }
    false
}

/// Whether `t` can be partitioned (covering, any role order) into a
/// two-block pair in the two-variable region or a three-block triple in
/// the three-variable region.
pub fn can_two_step(ctx: &Ctx, t: &[f64], primed: bool) -> bool {
    if t.len() >= 2
        && any_partition_roles(t, 2, &mut |s| d0_ok(ctx, s[0], s[1], primed))
    {
        return true;
    }
    t.len() >= 3 && any_partition_roles(t, 3, &mut |s| d12_ok(ctx, s[0], s[1], s[2], primed))
}

/// Extension used by the repeated-entry tests: accept a plain (non-primed)
/// two-block grouping when the first role is smaller than the second, or
/// when one of the duplicated trailing entries lands in the second role.
fn repeated_entry_extension(ctx: &Ctx, t: &[f64], dup_a: usize, dup_b: usize) -> bool {
    // Enumerate 2-block partitions tracking which block holds a duplicate.
    fn rec(
        ctx: &Ctx,
        t: &[f64],
        i: usize,
        sums: &mut [f64; 2],
        opened: usize,
        dup_in: &mut [bool; 2],
        dup_a: usize,
        dup_b: usize,
    ) -> bool {
        if i == t.len() {
            if opened != 2 {
                return false;
            }
            for (mi, ni) in [(0usize, 1usize), (1, 0)] {
                let (m, n) = (sums[mi], sums[ni]);
                if d0_ok(ctx, m, n, false) && (m < n || dup_in[ni]) {
                    return true;
                }
            }
            return false;
        }
        let is_dup = i == dup_a || i == dup_b;
        for j in 0..opened.min(2) {
            sums[j] += t[i];
            let prev = dup_in[j];
            if is_dup {
                dup_in[j] = true;
            }
            if rec(ctx, t, i + 1, sums, opened, dup_in, dup_a, dup_b) {
                sums[j] -= t[i];
                dup_in[j] = prev;
                return true;
            }
            sums[j] -= t[i];
            dup_in[j] = prev;
        }
        if opened < 2 {
            sums[opened] += t[i];
            let prev = dup_in[opened];
            if is_dup {
                dup_in[opened] = true;
            }
            if rec(ctx, t, i + 1, sums, opened + 1, dup_in, dup_a, dup_b) {
                sums[opened] -= t[i];
                dup_in[opened] = prev;
                return true;
            }
            sums[opened] -= t[i];
            dup_in[opened] = prev;
        }
        false
    }
    let mut sums = [0.0f64; 2];
    let mut dup_in = [false; 2];
    rec(ctx, t, 0, &mut sums, 0, &mut dup_in, dup_a, dup_b)
}

fn with_repeated_last(t: &[f64]) -> Vec<f64> {
    let mut v = t.to_vec();
    v.push(*t.last().unwrap());
    v
}

/// Repeated-entry two-step admissibility for a four-tuple (two further
/// decomposition steps with the last entry doubled, primed criteria plus
/// the optional extension).
pub fn in_d_star(ctx: &Ctx, t4: &[f64]) -> bool {
    debug_assert_eq!(t4.len(), 4);
    let t = with_repeated_last(t4);
    if can_two_step(ctx, &t, true) {
        return true;
    }
    ctx.policy.extended_two_step && repeated_entry_extension(ctx, &t, t.len() - 2, t.len() - 1)
}

/// Repeated-entry analogue for six-tuples (three further steps).
pub fn in_d_star_star(ctx: &Ctx, t6: &[f64]) -> bool {
    debug_assert_eq!(t6.len(), 6);
    let t = with_repeated_last(t6);
    if can_two_step(ctx, &t, true) {
        return true;
    }
    ctx.policy.extended_two_step && repeated_entry_extension(ctx, &t, t.len() - 2, t.len() - 1)
}

/// Plain (non-primed) two-step admissibility for a four-tuple.
pub fn in_d_dag(ctx: &Ctx, t4: &[f64]) -> bool {
    can_two_step(ctx, t4, false)
}

/// Role-reversed double two-step admissibility for a four-tuple: both the
/// tuple and its reflection through the residual must qualify.
pub fn in_d_ddag(ctx: &Ctx, t4: &[f64]) -> bool {
    if !in_d_dag(ctx, t4) {
        return false;
    }
    let r = [1.0 - t4.iter().sum::<f64>(), t4[1], t4[2], t4[3]];
    in_d_dag(ctx, &r)
}

/// Repeated-entry primed two-step admissibility for a three-tuple.
pub fn in_d_plus(ctx: &Ctx, t3: &[f64]) -> bool {
    debug_assert_eq!(t3.len(), 3);
    let t = with_repeated_last(t3);
    if can_two_step(ctx, &t, true) {
        return true;
    }
    ctx.policy.extended_plus && repeated_entry_extension(ctx, &t, t.len() - 2, t.len() - 1)
}

/// Repeated-entry primed two-step admissibility for a five-tuple.
pub fn in_d_plus_plus(ctx: &Ctx, t5: &[f64]) -> bool {
    debug_assert_eq!(t5.len(), 5);
    let t = with_repeated_last(t5);
    if can_two_step(ctx, &t, true) {
        return true;
    }
    ctx.policy.extended_plus && repeated_entry_extension(ctx, &t, t.len() - 2, t.len() - 1)
}

/// Role-reversed double two-step admissibility for a three-tuple.
pub fn in_d_sharp(ctx: &Ctx, t3: &[f64]) -> bool {
    if !can_two_step(ctx, t3, false) {
        return false;
    }
    let r = [1.0 - t3.iter().sum::<f64>(), t3[1], t3[2]];
    can_two_step(ctx, &r, false)
}

/// Planar region for the simple two-variable asymptotic criterion.
pub fn in_d3(ctx: &Ctx, a1: f64, a2: f64) -> bool {
    a2 <= a1 && 2.0 * a1 + a2 < 1.0 && a2 < 3.5 * ctx.theta - 1.5
}

// ---------------------------------------------------------------------------
// Planar regions
// ---------------------------------------------------------------------------

/// Triangle-like region `A` of the two-variable domain.
pub fn in_a(a1: f64, a2: f64) -> bool {
    (0.25..=0.4).contains(&a1) && (1.0 - a1) / 3.0 <= a2 && a2 <= a1.min(1.0 - 2.0 * a1)
}

/// Dual region `B` (image of `A` under the reflection
/// `(a1, a2) -> (1 - a1 - a2, a2)`).
pub fn in_b(a1: f64, a2: f64) -> bool {
    (1.0 / 3.0..=0.5).contains(&a1)
        && (0.5 * a1).max(1.0 - 2.0 * a1) <= a2
        && a2 <= 0.5 * (1.0 - a1)
}

/// Complement region `C` within the admissible two-variable domain.
pub fn in_c(ctx: &Ctx, a1: f64, a2: f64) -> bool {
    if in_a(a1, a2) || in_b(a1, a2) {
        return false;
    }
    let th = ctx.theta;
    nu(th, 0.0) <= a1 && a1 <= 0.5 && nu(th, a1) <= a2 && a2 <= a1.min(0.5 * (1.0 - a1))
}

/// Discard interval `H` for the first variable; empty once
/// `theta > 11/21`.
pub fn in_h(ctx: &Ctx, a1: f64) -> bool {
    let th = ctx.theta;
    3.5 * th - 1.5 <= a1 && a1 <= 4.0 - 7.0 * th
}

/// Split line between the `*_1` and `*_2` subdivisions.
pub fn small_second(ctx: &Ctx, a2: f64) -> bool {
    let th = ctx.theta;
    a2 < ((3.0 * th - 1.0) / 2.0).min((1.0 + th) / 5.0)
}

pub fn in_a1(ctx: &Ctx, a1: f64, a2: f64) -> bool {
    in_a(a1, a2) && small_second(ctx, a2)
}
pub fn in_a2(ctx: &Ctx, a1: f64, a2: f64) -> bool {
    in_a(a1, a2) && !small_second(ctx, a2)
}
pub fn in_b1(ctx: &Ctx, a1: f64, a2: f64) -> bool {
    in_b(a1, a2) && small_second(ctx, a2)
}
pub fn in_b2(ctx: &Ctx, a1: f64, a2: f64) -> bool {
    in_b(a1, a2) && !small_second(ctx, a2)
}
/// Pullback of `B1` under the reflection, excluding the discard interval.
pub fn in_a1_prime(ctx: &Ctx, a1: f64, a2: f64) -> bool {
    let r = 1.0 - a1 - a2;
    in_b1(ctx, r, a2) && !in_h(ctx, r)
}
/// Pullback of `B2` under the reflection, excluding the discard interval.
pub fn in_a2_prime(ctx: &Ctx, a1: f64, a2: f64) -> bool {
    let r = 1.0 - a1 - a2;
    in_b2(ctx, r, a2) && !in_h(ctx, r)
}

/// Narrow strip of `A` where an extra saving is extracted.
pub fn in_a_narrow(a1: f64, a2: f64) -> bool {
    in_a(a1, a2) && a1 + 3.0 * a2 < 1.005 && a1 >= 0.38
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        Ctx::with_default_policy(0.52)
    }

    #[test]
    fn two_block_examples() {
        let c = ctx();
        assert!(two_block_ok(&c, 0.48, 0.46));
        assert!(!two_block_ok(&c, 0.48, 0.43)); // gap too wide
        assert!(!two_block_ok(&c, 0.45, 0.44)); // total too small
    }

    #[test]
    fn four_part_row_example() {
        let c = ctx();
        assert!(in_g(&c, &[0.49, 0.25, 0.17, 0.07]));
    }

    #[test]
    fn region_duality() {
        let c = ctx();
        for i in 0..200 {
            for j in 0..120 {
                // offsets keep the sample points off the exact boundary
                // lines, where rounding could flip either side
                let a1 = 0.2 + 0.3 * (f64::from(i) + 0.123_456) / 200.0;
                let a2 = 0.1 + 0.3 * (f64::from(j) + 0.654_321) / 120.0;
                let d = in_a(a1, a2) == in_b(1.0 - a1 - a2, a2);
                assert!(d, "duality fails at ({a1}, {a2})");
                let _ = c;
            }
        }
    }

    #[test]
    fn h_empty_beyond_11_21() {
        let c = Ctx::with_default_policy(0.524);
        assert!(!in_h(&c, 0.3));
        assert!(!in_h(&c, 0.333));
        let c2 = Ctx::with_default_policy(0.52);
        assert!(in_h(&c2, 0.33));
        assert!(!in_h(&c2, 0.3));
    }
}

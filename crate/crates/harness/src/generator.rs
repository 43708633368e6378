//! Random admissible instances landing in a requested case cell.
//!
//! Parameters are drawn as Gaussian rationals with bounded numerators and
//! denominators and rejected until every precondition holds. For the
//! classical engine a construction with distinct fractional parts takes over
//! when rejection runs out.

use std::ops::RangeInclusive;

use duality_core::qduality::default_exponent_bound;
use duality_core::{
    ClassicalCase, ClassicalDualityInstance, GaussianRational, PointMultiset, PointSet, QCase,
    QDualityInstance, Rational,
};
use num_bigint::BigInt;
use rand::Rng;

use crate::config::SuiteConfig;
use crate::error::{HarnessError, Result};

fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let numer = rng.gen_range(-bound..=bound);
    let denom = rng.gen_range(1..=bound);
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Real half of the time, otherwise with a nonzero imaginary part.
fn random_gaussian<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> GaussianRational {
    let re = random_rational(rng, bound);
    if rng.gen_bool(0.5) {
        return GaussianRational::real(re);
    }
    loop {
        let im = random_rational(rng, bound);
        if im != Rational::default() {
            return GaussianRational::new(re, im);
        }
    }
}

fn random_nonzero_gaussian<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> GaussianRational {
    loop {
        let x = random_gaussian(rng, bound);
        if x != GaussianRational::default() {
            return x;
        }
    }
}

/// Splits `total` into `parts` integer shifts. Without `negative` every part
/// is nonnegative; with it exactly one part is negative.
fn random_shifts<R: Rng + ?Sized>(
    rng: &mut R,
    parts: usize,
    total: i64,
    negative: bool,
) -> Vec<i64> {
    let mut m = vec![0i64; parts];
    if parts == 0 {
        return m;
    }
    let mut free: Vec<usize> = (0..parts).collect();
    let mut remaining = total;
    if negative {
        let idx = rng.gen_range(0..parts);
        let mut neg = -rng.gen_range(1..=2i64);
        if parts == 1 || total - neg < 0 {
            neg = if parts == 1 { total } else { total.min(-1) };
        }
        m[idx] = neg;
        remaining -= neg;
        free.retain(|&i| i != idx);
    }
    for _ in 0..remaining {
        let idx = free[rng.gen_range(0..free.len())];
        m[idx] += 1;
    }
    m
}

/// Admissible `p` for a classical cell at a given `r`.
fn classical_p_range(
    case: ClassicalCase,
    negative: bool,
    r: usize,
) -> Option<RangeInclusive<usize>> {
    let neg = usize::from(negative);
    let range = match case {
        ClassicalCase::Vanishing => neg..=r + 1,
        ClassicalCase::UnitConstant => 1 + neg..=r,
        ClassicalCase::UnitGeometric => r + 1..=r + 1,
        ClassicalCase::ShiftConstant => 1 + neg..=r.saturating_sub(1),
        ClassicalCase::ShiftLinear if negative && r < 2 => return None,
        ClassicalCase::ShiftLinear => r..=r,
        ClassicalCase::ShiftRational => r + 1..=r + 1,
    };
    (!range.is_empty()).then_some(range)
}

fn pick<R: Rng + ?Sized, T: Clone>(rng: &mut R, items: &[T]) -> Option<T> {
    (!items.is_empty()).then(|| items[rng.gen_range(0..items.len())].clone())
}

/// `M` for a cell, given its offset from `r` (`-1` standing for any `M < r`).
fn target_total_shift<R: Rng + ?Sized>(
    rng: &mut R,
    case_offset: i64,
    r: usize,
    p: usize,
    negative: bool,
) -> i64 {
    let r = r as i64;
    match case_offset {
        // M < r
        -1 => {
            if negative {
                if p == 1 {
                    rng.gen_range(-3..=-1)
                } else {
                    rng.gen_range(-3..=r - 1)
                }
            } else if p == 0 {
                0
            } else {
                rng.gen_range(0..=r - 1)
            }
        }
        offset => r + offset,
    }
}

fn classical_offset(case: ClassicalCase) -> i64 {
    match case {
        ClassicalCase::Vanishing => -1,
        ClassicalCase::UnitConstant | ClassicalCase::UnitGeometric => 0,
        _ => 1,
    }
}

fn classical_admissible(inst: &ClassicalDualityInstance, order: usize) -> bool {
    (0..=inst.r()).all(|i| inst.coefficient_c(i).is_ok()) && inst.build_h(order.min(1)).is_ok()
}

/// Draws an instance of the classical engine in the cell `(case, negative)`.
pub fn random_classical_instance<R: Rng + ?Sized>(
    cfg: &SuiteConfig,
    rng: &mut R,
    case: ClassicalCase,
    negative: bool,
) -> Result<ClassicalDualityInstance> {
    let cell = format!(
        "classical {}{}",
        case.label(),
        if negative { " m̂<0" } else { "" }
    );
    let shapes: Vec<(usize, RangeInclusive<usize>)> = (1..=cfg.r_max)
        .filter_map(|r| classical_p_range(case, negative, r).map(|ps| (r, ps)))
        .collect();
    let exhausted = || HarnessError::GenerationExhausted {
        cell: cell.clone(),
        attempts: cfg.max_attempts,
    };
    if shapes.is_empty() {
        return Err(exhausted());
    }
    let bound = cfg.denominator_bound;
    for attempt in 0..2 * cfg.max_attempts {
        let (r, ps) = pick(rng, &shapes).expect("shapes is nonempty");
        let p = rng.gen_range(ps);
        let total = target_total_shift(rng, classical_offset(case), r, p, negative);
        let m = random_shifts(rng, p, total, negative);
        let b: Vec<_> = (0..p).map(|_| random_gaussian(rng, bound)).collect();
        let a: Vec<_> = if attempt < cfg.max_attempts {
            (0..=r).map(|_| random_gaussian(rng, bound)).collect()
        } else {
            // distinct fractional parts i/(r+3) keep every difference non-integral
            (0..=r)
                .map(|i| {
                    let whole = rng.gen_range(-3..=3i64);
                    GaussianRational::from_ratio(whole * (r as i64 + 3) + i as i64, r as i64 + 3)
                })
                .collect()
        };
        let Ok(inst) = ClassicalDualityInstance::new(a, b, m) else {
            continue;
        };
        debug_assert_eq!(inst.case().ok(), Some(case));
        if classical_admissible(&inst, cfg.order) {
            return Ok(inst);
        }
    }
    Err(exhausted())
}

fn q_offset(case: QCase) -> i64 {
    match case {
        QCase::Vanishing => -1,
        QCase::Unit => 0,
        QCase::Shift => 1,
    }
}

/// Draws an instance of the q engine in the cell `(case, negative)`, with
/// `q` a rational in `(0, 1)`.
pub fn random_q_instance<R: Rng + ?Sized>(
    cfg: &SuiteConfig,
    rng: &mut R,
    case: QCase,
    negative: bool,
) -> Result<QDualityInstance> {
    let bound = cfg.denominator_bound;
    for _ in 0..cfg.max_attempts {
        let r = rng.gen_range(1..=cfg.q_r_max);
        let denom = rng.gen_range(2..=bound);
        let q = GaussianRational::from_ratio(rng.gen_range(1..denom), denom);
        let total = target_total_shift(rng, q_offset(case), r, r + 1, negative);
        let m = random_shifts(rng, r + 1, total, negative);
        let a: Vec<_> = (0..=r)
            .map(|_| random_nonzero_gaussian(rng, bound))
            .collect();
        let b: Vec<_> = (0..=r)
            .map(|_| random_nonzero_gaussian(rng, bound))
            .collect();
        let exponent_bound = cfg
            .exponent_bound
            .unwrap_or_else(|| default_exponent_bound(cfg.order, &m));
        let Ok(inst) = QDualityInstance::with_exponent_bound(q, a, b, m, exponent_bound) else {
            continue;
        };
        debug_assert_eq!(inst.case().ok(), Some(case));
        if (0..=inst.r()).all(|i| inst.coefficient_c_q(i).is_ok())
            && inst.build_g(cfg.order.min(1)).is_ok()
        {
            return Ok(inst);
        }
    }
    Err(HarnessError::GenerationExhausted {
        cell: format!("q {}{}", case.label(), if negative { " m̂<0" } else { "" }),
        attempts: cfg.max_attempts,
    })
}

/// A random pair with `n_A` distinct points and `n_B` arbitrary points.
pub fn random_lemma_pair<R: Rng + ?Sized>(
    rng: &mut R,
    n_a: usize,
    n_b: usize,
    bound: i64,
) -> (PointSet, PointMultiset) {
    let mut points: Vec<GaussianRational> = Vec::with_capacity(n_a);
    while points.len() < n_a {
        let x = random_gaussian(rng, bound);
        if !points.contains(&x) {
            points.push(x);
        }
    }
    let set = PointSet::new(points).expect("points are distinct by construction");
    let multiset = PointMultiset::new((0..n_b).map(|_| random_gaussian(rng, bound)).collect());
    (set, multiset)
}

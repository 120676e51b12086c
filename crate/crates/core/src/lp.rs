//! Exact-rational linear programming for strict homogeneous systems.
//!
//! Positivity of a matching is an open condition, so feasibility is decided
//! without floating point: maximise a slack `t` subject to
//! `a·w ≥ t` (for `a·w > 0` rows) and `a·w ≤ −t` (for `a·w < 0` rows), with
//! `t ≤ 1`. The system is homogeneous, hence the strict system is feasible iff
//! the optimum has `t > 0`. The simplex uses Bland's rule, so it terminates on
//! the heavily degenerate tableaux these systems produce.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

/// Direction of a strict inequality `a·w ⋛ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Positive,
    Negative,
}

/// `Σ coeff · w[var]` compared strictly against zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictConstraint {
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
}

impl StrictConstraint {
    pub fn new(terms: Vec<(usize, i64)>, sense: Sense) -> Self {
        StrictConstraint { terms, sense }
    }

    /// Exact evaluation of the constraint at `w`.
    pub fn holds(&self, w: &[BigRational]) -> bool {
        let mut acc = BigRational::zero();
        for &(var, c) in &self.terms {
            acc += &w[var] * BigRational::from_integer(BigInt::from(c));
        }
        match self.sense {
            Sense::Positive => acc.is_positive(),
            Sense::Negative => acc.is_negative(),
        }
    }
}

/// Exact field operations for the simplex; `None` signals overflow.
trait LpNum: Clone + PartialOrd + Sized {
    fn from_i64(v: i64) -> Self;
    fn nil(&self) -> bool;
    fn gt0(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn to_big(&self) -> BigRational;
}

impl LpNum for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn gt0(&self) -> bool {
        Signed::is_positive(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn to_big(&self) -> BigRational {
        self.clone()
    }
}

type Small = Ratio<i64>;

impl LpNum for Small {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
    fn nil(&self) -> bool {
        *self.numer() == 0
    }
    fn gt0(&self) -> bool {
        *self.numer() > 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

/// Returns a solution of the strict system, scaled to integers, or `None` if
/// the system is infeasible.
///
/// The simplex first runs on machine-word rationals and restarts with big
/// rationals on overflow; pivoting is identical in both, so is the answer.
pub fn solve_strict(num_vars: usize, constraints: &[StrictConstraint]) -> Option<Vec<BigRational>> {
    let x = match solve_slack::<Small>(num_vars, constraints) {
        Some(x) => x,
        None => solve_slack::<BigRational>(num_vars, constraints).expect("big rationals do not overflow"),
    }?;
    Some(scale_to_integers(x))
}

/// Inner solve: `None` on overflow, `Some(None)` when infeasible.
fn solve_slack<T: LpNum>(n: usize, constraints: &[StrictConstraint]) -> Option<Option<Vec<BigRational>>> {
    // columns: w⁺ (0..n), w⁻ (n..2n), t (2n)
    let cols = 2 * n + 1;
    let t_col = 2 * n;
    let zero = T::from_i64(0);
    let one = T::from_i64(1);
    let mut a: Vec<Vec<T>> = Vec::with_capacity(constraints.len() + 1);
    let mut b: Vec<T> = Vec::with_capacity(constraints.len() + 1);
    for c in constraints {
        let mut row = vec![zero.clone(); cols];
        // Positive: −a·w + t ≤ 0; Negative: a·w + t ≤ 0
        let sign: i64 = match c.sense {
            Sense::Positive => -1,
            Sense::Negative => 1,
        };
        for &(var, coeff) in &c.terms {
            assert!(var < n, "variable {var} out of range");
            let v = T::from_i64(sign * coeff);
            row[var] = row[var].add(&v)?;
            row[n + var] = row[n + var].sub(&v)?;
        }
        row[t_col] = one.clone();
        a.push(row);
        b.push(zero.clone());
    }
    let mut cap = vec![zero.clone(); cols];
    cap[t_col] = one.clone();
    a.push(cap);
    b.push(one);

    let mut objective = vec![zero; cols];
    objective[t_col] = T::from_i64(1);

    // t is capped, so the objective is bounded
    let x = maximize(&objective, a, b)?.expect("slack objective is bounded by t <= 1");
    if !x[t_col].gt0() {
        return Some(None);
    }
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        w.push(x[i].sub(&x[n + i])?.to_big());
    }
    Some(Some(w))
}

/// Multiplies by the lcm of the denominators; positive scaling preserves every
/// strict homogeneous inequality.
pub fn scale_to_integers(w: Vec<BigRational>) -> Vec<BigRational> {
    let lcm = w
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut scaled: Vec<BigInt> = w.iter().map(|r| (r * &lcm).to_integer()).collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !gcd.is_zero() && !gcd.is_one() {
        for v in &mut scaled {
            *v = &*v / &gcd;
        }
    }
    scaled.into_iter().map(BigRational::from_integer).collect()
}

/// Dense tableau simplex for `max c·x` s.t. `A x ≤ b`, `x ≥ 0`, with `b ≥ 0`
/// (the slack basis is then feasible, so no phase one is needed).
/// Returns `None` on overflow and `Some(None)` when unbounded.
fn maximize<T: LpNum>(c: &[T], a: Vec<Vec<T>>, b: Vec<T>) -> Option<Option<Vec<T>>> {
    let m = a.len();
    let n = c.len();
    let width = n + m;
    let zero = T::from_i64(0);
    // tableau rows: [A | I | b]
    let mut rows: Vec<Vec<T>> = a
        .into_iter()
        .zip(b)
        .enumerate()
        .map(|(i, (mut row, rhs))| {
            row.resize(width, zero.clone());
            row[n + i] = T::from_i64(1);
            row.push(rhs);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs c_j − z_j; the slack basis has z = 0
    let mut reduced: Vec<T> = c.to_vec();
    reduced.resize(width, zero.clone());

    loop {
        // Bland: lowest-index improving column
        let Some(enter) = (0..width).find(|&j| reduced[j].gt0()) else {
            break;
        };
        let mut leave: Option<(usize, T)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !row[enter].gt0() {
                continue;
            }
            let ratio = row[width].div(&row[enter])?;
            let better = match &leave {
                None => true,
                Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((pivot_row, _)) = leave else {
            return Some(None);
        };
        pivot(&mut rows, &mut reduced, pivot_row, enter)?;
        basis[pivot_row] = enter;
    }

    let mut x = vec![zero; n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = rows[i][width].clone();
        }
    }
    Some(Some(x))
}

fn pivot<T: LpNum>(rows: &mut [Vec<T>], reduced: &mut [T], r: usize, col: usize) -> Option<()> {
    let inv = T::from_i64(1).div(&rows[r][col])?;
    for v in rows[r].iter_mut() {
        if !v.nil() {
            *v = v.mul(&inv)?;
        }
    }
    let pivot_row = rows[r].clone();
    let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].nil()).collect();
    for (i, row) in rows.iter_mut().enumerate() {
        if i == r || row[col].nil() {
            continue;
        }
        let factor = row[col].clone();
        for &j in &nz {
            row[j] = row[j].sub(&factor.mul(&pivot_row[j])?)?;
        }
    }
    if !reduced[col].nil() {
        let factor = reduced[col].clone();
        for &j in &nz {
            if j < reduced.len() {
                reduced[j] = reduced[j].sub(&factor.mul(&pivot_row[j])?)?;
            }
        }
    }
    Some(())
}

//! Dimension formulas and exact algebraic Hilbert-series solving.
//!
//! The graded dimension of the operad of noncrossing cliques over a magma of
//! cardinality `m` is, for arity `n ≥ 2`,
//!
//! ```text
//! dim(n) = Σ_{0 ≤ k ≤ n−2} m^{n+k+1} (m−1)^{n−k−2} nar(n, k)
//! ```
//!
//! where `nar(n, k)` is the Narayana-type count of binary trees with `n`
//! leaves having exactly `k` internal nodes whose left child is internal.
//! The dual operad has `dim!(n) = Σ_k m^{n+1} (m(m−1)+1)^k (m(m−1))^{n−k−2}
//! nar(n, k)`.  Both Hilbert series satisfy explicit quadratic algebraic
//! equations, solved here by exact-rational coefficient extraction; for a
//! Koszul operad the two series are related by `H(−H!(−t)) = t`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Binomial coefficient as a big integer.
fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut r = BigUint::one();
    for i in 0..k.min(n - k) {
        r = r * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    r
}

/// `nar(n, k) = C(n−1, k)·C(n−1, k+1)/(n−1)`: binary trees with `n` leaves
/// and exactly `k` internal nodes whose left child is internal.  Zero
/// outside `n ≥ 2`, `0 ≤ k ≤ n−2`.
pub fn narayana(n: u64, k: u64) -> BigUint {
    if n < 2 || k > n - 2 {
        return BigUint::zero();
    }
    binom(n - 1, k) * binom(n - 1, k + 1) / BigUint::from(n - 1)
}

/// Brute-force cross-check of `narayana` by enumerating binary-tree shapes.
pub fn narayana_brute(n: u64, k: u64) -> BigUint {
    // counts[leaves][k]
    let n = n as usize;
    let k = k as usize;
    if n == 0 {
        return BigUint::zero();
    }
    let mut counts: Vec<Vec<BigUint>> = vec![vec![]; n + 1];
    counts[1] = vec![BigUint::one()]; // the leaf: zero qualifying nodes
    for leaves in 2..=n {
        let mut row = vec![BigUint::zero(); leaves - 1];
        for l in 1..leaves {
            let r = leaves - l;
            for (kl, cl) in counts[l].clone().iter().enumerate() {
                for (kr, cr) in counts[r].clone().iter().enumerate() {
                    // the root contributes when its left child is internal
                    let kk = kl + kr + usize::from(l >= 2);
                    row[kk] += cl * cr;
                }
            }
        }
        counts[leaves] = row;
    }
    counts[n].get(k).cloned().unwrap_or_else(BigUint::zero)
}

fn pow_with_zero_convention(base: u64, exp: u64) -> BigUint {
    // 0^0 = 1 by convention in the dimension sums
    if exp == 0 {
        BigUint::one()
    } else {
        BigUint::from(base).pow(exp as u32)
    }
}

/// Graded dimension of the noncrossing-clique operad.
pub fn dim_ncm(m: u64, n: u64) -> BigUint {
    assert!(m >= 1 && n >= 1);
    if n == 1 {
        return BigUint::one();
    }
    let mut total = BigUint::zero();
    for k in 0..=n - 2 {
        total += BigUint::from(m).pow((n + k + 1) as u32)
            * pow_with_zero_convention(m - 1, n - k - 2)
            * narayana(n, k);
    }
    total
}

/// Graded dimension of the Koszul dual.
pub fn dim_ncm_dual(m: u64, n: u64) -> BigUint {
    assert!(m >= 1 && n >= 1);
    if n == 1 {
        return BigUint::one();
    }
    let mut total = BigUint::zero();
    for k in 0..=n - 2 {
        total += BigUint::from(m).pow((n + 1) as u32)
            * pow_with_zero_convention(m * (m - 1) + 1, k)
            * pow_with_zero_convention(m * (m - 1), n - k - 2)
            * narayana(n, k);
    }
    total
}

/// A truncated power series with exact rational coefficients
/// `c₀ + c₁ t + … + c_N t^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatSeries {
    pub coeffs: Vec<BigRational>,
}

impl RatSeries {
    /// The zero series at the given truncation order.
    pub fn zero(order: usize) -> RatSeries {
        RatSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    /// The identity series `t`.
    pub fn t(order: usize) -> RatSeries {
        let mut s = RatSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Truncated product.
    pub fn mul(&self, other: &RatSeries) -> RatSeries {
        let order = self.order().min(other.order());
        let mut out = RatSeries::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if !other.coeffs[j].is_zero() {
                    let p = &self.coeffs[i] * &other.coeffs[j];
                    out.coeffs[i + j] += p;
                }
            }
        }
        out
    }

    /// Truncated sum.
    pub fn add(&self, other: &RatSeries) -> RatSeries {
        let order = self.order().min(other.order());
        let mut out = RatSeries::zero(order);
        for i in 0..=order {
            out.coeffs[i] = &self.coeffs[i] + &other.coeffs[i];
        }
        out
    }

    /// Composition `self(other(t))`; requires `other` to have zero constant
    /// term.
    pub fn compose(&self, other: &RatSeries) -> RatSeries {
        assert!(other.coeffs[0].is_zero(), "inner series must vanish at 0");
        let order = self.order().min(other.order());
        let mut out = RatSeries::zero(order);
        // Horner evaluation from the top coefficient down
        for c in self.coeffs.iter().rev() {
            out = out.mul(other);
            out.coeffs[0] += c;
        }
        out
    }

    /// The series `-self(-t)`.
    pub fn alternate(&self) -> RatSeries {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            if i % 2 == 0 {
                *c = -c.clone();
            }
        }
        out
    }

    /// Coefficients as `u64`s for display; `None` when any coefficient is
    /// not a nonnegative integer fitting the type.
    pub fn as_u64s(&self) -> Option<Vec<u64>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() && !c.is_negative() {
                    c.to_integer().to_u64()
                } else {
                    None
                }
            })
            .collect()
    }
}

/// A bivariate polynomial `P(t, H) = Σ c_{i,j} t^i H^j` with integer
/// coefficients, stored as `(i, j, c)` triples.
pub type BivariatePoly = Vec<(usize, usize, i64)>;

/// Solves `P(t, H(t)) = 0` for the unique power-series root with `H(0) = 0`,
/// by coefficient extraction.  Requires the linear-in-`H` coefficient at
/// `t⁰` to be nonzero (the branch condition); returns an error otherwise.
pub fn solve_algebraic_series(p: &BivariatePoly, order: usize) -> Result<RatSeries, String> {
    let lead: i64 = p
        .iter()
        .filter(|&&(i, j, _)| i == 0 && j == 1)
        .map(|&(_, _, c)| c)
        .sum();
    if lead == 0 {
        return Err("branch condition violated: the t⁰·H coefficient vanishes".into());
    }
    let lead = BigRational::from_integer(BigInt::from(lead));
    let mut h = RatSeries::zero(order);
    for k in 1..=order {
        // residual coefficient of t^k with the coefficients found so far
        // (h_k still zero, so the only h_k-dependence is the linear term)
        let mut residual = BigRational::zero();
        for &(i, j, c) in p {
            if i > k {
                continue;
            }
            // coefficient of t^{k-i} in h^j, truncated at k - i
            let target = k - i;
            let mut pw = RatSeries::zero(target);
            pw.coeffs[0] = BigRational::one();
            for _ in 0..j {
                pw = pw.mul(&RatSeries {
                    coeffs: h.coeffs[..=target].to_vec(),
                });
            }
            residual += BigRational::from_integer(BigInt::from(c)) * &pw.coeffs[target];
        }
        h.coeffs[k] = -residual / &lead;
    }
    // verify the solution: substituting back must give 0 mod t^{order+1}
    let mut check = RatSeries::zero(order);
    for &(i, j, c) in p {
        let mut term = RatSeries::zero(order);
        if i <= order {
            term.coeffs[i] = BigRational::from_integer(BigInt::from(c));
        }
        for _ in 0..j {
            term = term.mul(&h);
        }
        check = check.add(&term);
    }
    if check.coeffs.iter().any(|c| !c.is_zero()) {
        return Err("internal error: solved series does not satisfy P".into());
    }
    Ok(h)
}

/// The algebraic equation of the Hilbert series of the clique operad over a
/// magma of cardinality `m`:
/// `t + (m³−2m²+2m−1)t² + (2m²−3m+2)tH − H + (m−1)H² = 0`.
pub fn hilbert_poly_ncm(m: i64) -> BivariatePoly {
    vec![
        (1, 0, 1),
        (2, 0, m * m * m - 2 * m * m + 2 * m - 1),
        (1, 1, 2 * m * m - 3 * m + 2),
        (0, 1, -1),
        (0, 2, m - 1),
    ]
}

/// The algebraic equation of the dual Hilbert series (`m ≠ 1`):
/// `t + (m−1)t² + (2m²−3m+2)tH − H + (m³−2m²+2m−1)H² = 0`.
pub fn hilbert_poly_ncm_dual(m: i64) -> BivariatePoly {
    vec![
        (1, 0, 1),
        (2, 0, m - 1),
        (1, 1, 2 * m * m - 3 * m + 2),
        (0, 1, -1),
        (0, 2, m * m * m - 2 * m * m + 2 * m - 1),
    ]
}

/// Certificate of the Koszulity series identity for one cardinality.
#[derive(Debug, Clone)]
pub struct KoszulSeriesCertificate {
    pub m: u64,
    pub order: usize,
    pub identity_holds: bool,
    pub dims_match: bool,
    pub dual_dims_match: bool,
}

impl KoszulSeriesCertificate {
    pub fn passed(&self) -> bool {
        self.identity_holds && self.dims_match && self.dual_dims_match
    }
}

/// Solves both Hilbert series for cardinality `m ≥ 2`, checks their
/// coefficients against the dimension formulas, and certifies
/// `H(−H!(−t)) = t mod t^{order+1}`.
pub fn koszul_series_check(m: u64, order: usize) -> Result<KoszulSeriesCertificate, String> {
    if m < 2 {
        return Err("the series identity requires m ≥ 2".into());
    }
    let h = solve_algebraic_series(&hilbert_poly_ncm(m as i64), order)?;
    let hd = solve_algebraic_series(&hilbert_poly_ncm_dual(m as i64), order)?;
    let dims_match = (1..=order).all(|n| {
        h.coeffs[n] == BigRational::from_integer(dim_ncm(m, n as u64).into())
    });
    let dual_dims_match = (1..=order).all(|n| {
        hd.coeffs[n] == BigRational::from_integer(dim_ncm_dual(m, n as u64).into())
    });
    let composed = h.compose(&hd.alternate());
    let identity_holds = composed == RatSeries::t(order);
    Ok(KoszulSeriesCertificate {
        m,
        order,
        identity_holds,
        dims_match,
        dual_dims_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn narayana_values() {
        assert_eq!(narayana(2, 0), BigUint::from(1u32));
        assert_eq!(narayana(4, 1), BigUint::from(3u32));
        for n in 2..=8u64 {
            assert_eq!(narayana(n, n - 2), BigUint::one(), "n={n}");
        }
        assert_eq!(narayana(5, 10), BigUint::zero());
    }

    #[test]
    fn narayana_matches_brute_force() {
        for n in 2..=10u64 {
            for k in 0..n {
                assert_eq!(narayana(n, k), narayana_brute(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn dimension_tables() {
        let m2: Vec<u64> = (1..=6).map(|n| dim_ncm(2, n).to_u64().unwrap()).collect();
        assert_eq!(m2, vec![1, 8, 48, 352, 2880, 25216]);
        let m3: Vec<u64> = (1..=5).map(|n| dim_ncm(3, n).to_u64().unwrap()).collect();
        assert_eq!(m3, vec![1, 27, 405, 7533, 156735]);
        for n in 1..=6 {
            assert_eq!(dim_ncm(1, n), BigUint::one());
        }
        assert_eq!(dim_ncm(4, 5).to_u64().unwrap(), 2437120);
        assert_eq!(dim_ncm(4, 8).to_u64().unwrap(), 201889939456);
    }

    #[test]
    fn dual_dimension_tables() {
        let m2: Vec<u64> = (1..=5).map(|n| dim_ncm_dual(2, n).to_u64().unwrap()).collect();
        assert_eq!(m2, vec![1, 8, 80, 992, 13760]);
        let m3: Vec<u64> = (1..=5).map(|n| dim_ncm_dual(3, n).to_u64().unwrap()).collect();
        assert_eq!(m3, vec![1, 27, 1053, 51273, 2795715]);
        for n in 1..=6 {
            assert_eq!(dim_ncm_dual(1, n), BigUint::one());
        }
    }

    #[test]
    fn series_solutions() {
        let h = solve_algebraic_series(&hilbert_poly_ncm(2), 6).unwrap();
        assert_eq!(h.as_u64s().unwrap(), vec![0, 1, 8, 48, 352, 2880, 25216]);
        // Motzkin: t + (t−1)H + tH²
        let motz = solve_algebraic_series(&vec![(1, 0, 1), (1, 1, 1), (0, 1, -1), (1, 2, 1)], 8)
            .unwrap();
        assert_eq!(motz.as_u64s().unwrap(), vec![0, 1, 1, 2, 4, 9, 21, 51, 127]);
        // t − H + 2H² − H³
        let nct =
            solve_algebraic_series(&vec![(1, 0, 1), (0, 1, -1), (0, 2, 2), (0, 3, -1)], 6)
                .unwrap();
        assert_eq!(nct.as_u64s().unwrap(), vec![0, 1, 2, 7, 30, 143, 728]);
    }

    #[test]
    fn branch_condition() {
        // no linear H term at t⁰: rejected
        assert!(solve_algebraic_series(&vec![(1, 0, 1), (0, 2, 1)], 4).is_err());
    }

    #[test]
    fn koszul_identity() {
        for m in [2u64, 3] {
            let cert = koszul_series_check(m, 8).unwrap();
            assert!(cert.passed(), "m={m}: {cert:?}");
        }
        assert!(koszul_series_check(1, 8).is_err());
    }
}

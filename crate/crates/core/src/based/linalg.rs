//! Small dense linear algebra: Perron roots, symmetric eigenvalues and exact
//! characteristic polynomials.

/// Spectral radius of a nonnegative square matrix.
///
/// Power iteration on `M + I` from the all-ones vector; the shift makes the
/// Perron root the unique eigenvalue of largest modulus. Stops once the
/// Collatz–Wielandt bounds (or, for vectors with zero entries, successive
/// norm ratios) agree to a relative `1e-12`.
pub fn spectral_radius(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 0 {
        return 0.0;
    }
    let mut x = vec![1.0; n];
    let mut prev = f64::NAN;
    for _ in 0..200_000 {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + m[i].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>())
            .collect();
        let norm = y.iter().cloned().fold(0.0, f64::max);
        let xnorm = x.iter().cloned().fold(0.0, f64::max);
        let ratio = norm / xnorm;
        if x.iter().all(|&v| v > 0.0) {
            let (lo, hi) = (0..n).fold((f64::INFINITY, 0.0f64), |(lo, hi), i| {
                let r = y[i] / x[i];
                (lo.min(r), hi.max(r))
            });
            if hi - lo <= 1e-12 * hi {
                return (lo + hi) / 2.0 - 1.0;
            }
        }
        if (ratio - prev).abs() <= 1e-14 * ratio {
            return ratio - 1.0;
        }
        prev = ratio;
        x = y.into_iter().map(|v| v / norm).collect();
    }
    prev - 1.0
}

/// Spectral radius of a nonnegative integer matrix.
pub fn spectral_radius_int(m: &[Vec<u64>]) -> f64 {
    let f: Vec<Vec<f64>> = m
        .iter()
        .map(|r| r.iter().map(|&c| c as f64).collect())
        .collect();
    spectral_radius(&f)
}

/// Eigenvalues of a real symmetric matrix (cyclic Jacobi), ascending.
pub fn symmetric_eigenvalues(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    ev
}

/// Characteristic polynomial `det(xI - M)`, coefficients from degree 0 up
/// (Faddeev–LeVerrier, exact in `i128`).
pub fn char_poly(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&c| c as i128).collect())
        .collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
    let mut mk = vec![vec![0i128; n]; n];
    for k in 1..=n {
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s: i128 = (0..n).map(|t| a[i][t] * mk[t][j]).sum();
                if i == j {
                    s += coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        mk = next;
        let tr: i128 = (0..n)
            .map(|i| (0..n).map(|t| a[i][t] * mk[t][i]).sum::<i128>())
            .sum();
        debug_assert_eq!(tr % k as i128, 0);
        coeffs[n - k] = -tr / k as i128;
    }
    coeffs
}

/// Remainder of `p` modulo the monic polynomial `d` (coefficients from
/// degree 0 up).
pub fn poly_rem(p: &[i128], d: &[i128]) -> Vec<i128> {
    assert_eq!(d.last(), Some(&1), "divisor must be monic");
    let mut r = p.to_vec();
    let dd = d.len() - 1;
    while r.len() > dd {
        let lead = r.pop().expect("nonempty");
        let shift = r.len() - dd;
        for (i, &c) in d[..dd].iter().enumerate() {
            r[shift + i] -= lead * c;
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// `p / d` for polynomials with exact division (coefficients from degree 0).
fn poly_div_exact(p: &[i128], d: &[i128]) -> Vec<i128> {
    let mut r = p.to_vec();
    let dd = d.len() - 1;
    let lead_d = d[dd];
    let mut q = vec![0i128; r.len().saturating_sub(dd)];
    while r.len() > dd {
        let lead = *r.last().expect("nonempty");
        debug_assert_eq!(lead % lead_d, 0);
        let c = lead / lead_d;
        let shift = r.len() - 1 - dd;
        q[shift] = c;
        for (i, &dc) in d.iter().enumerate() {
            r[shift + i] -= c * dc;
        }
        r.pop();
    }
    q
}

/// Cyclotomic polynomial `Phi_m`.
pub fn cyclotomic(m: usize) -> Vec<i128> {
    let mut p = vec![0i128; m + 1];
    p[0] = -1;
    p[m] = 1;
    for d in 1..m {
        if m % d == 0 {
            p = poly_div_exact(&p, &cyclotomic(d));
        }
    }
    p
}

/// Minimal polynomial over `Q` of `2cos(pi/n)`, monic with integer
/// coefficients from degree 0 up.
///
/// `2cos(pi/n) = z + 1/z` for a primitive `2n`-th root of unity `z`;
/// `Phi_{2n}` is palindromic of degree `2k`, and `x^{-k} Phi_{2n}(x)` is a
/// polynomial in `y = x + 1/x`.
pub fn min_poly_two_cos(n: usize) -> Vec<i128> {
    let phi = cyclotomic(2 * n);
    let k = (phi.len() - 1) / 2;
    // D_j(y) = x^j + x^-j: D_0 = 2, D_1 = y, D_j = y D_{j-1} - D_{j-2}
    let mut d: Vec<Vec<i128>> = vec![vec![2], vec![0, 1]];
    for j in 2..=k {
        let mut next = vec![0i128; j + 1];
        for (i, &c) in d[j - 1].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, &c) in d[j - 2].iter().enumerate() {
            next[i] -= c;
        }
        d.push(next);
    }
    let mut g = vec![0i128; k + 1];
    g[0] = phi[k];
    for j in 1..=k {
        for (i, &c) in d[j].iter().enumerate() {
            g[i] += phi[k + j] * c;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perron_root_of_small_matrices() {
        let m = vec![vec![0.0, 1.0], vec![1.0, 1.0]];
        assert!((spectral_radius(&m) - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-10);
        let m = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert!((spectral_radius(&m) - 1.0).abs() < 1e-10);
        let nil = vec![vec![0.0, 1.0], vec![0.0, 0.0]];
        assert!(spectral_radius(&nil).abs() < 1e-4);
    }

    #[test]
    fn char_poly_of_path() {
        // A3 path: x^3 - 2x
        let m = vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]];
        assert_eq!(char_poly(&m), vec![0, -2, 0, 1]);
        let ev = symmetric_eigenvalues(&m.iter().map(|r| r.iter().map(|&c| c as f64).collect()).collect::<Vec<_>>());
        assert!((ev[2] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
        // 2cos(pi/3) = 1, 2cos(pi/4) = sqrt2, 2cos(pi/5) = golden ratio
        assert_eq!(min_poly_two_cos(3), vec![-1, 1]);
        assert_eq!(min_poly_two_cos(4), vec![-2, 0, 1]);
        assert_eq!(min_poly_two_cos(5), vec![-1, -1, 1]);
        assert_eq!(min_poly_two_cos(6), vec![-3, 0, 1]);
        for n in 3..=30 {
            let g = min_poly_two_cos(n);
            let c = 2.0 * (std::f64::consts::PI / n as f64).cos();
            let val: f64 = g.iter().rev().fold(0.0, |acc, &k| acc * c + k as f64);
            assert!(val.abs() < 1e-6, "n = {n}");
        }
        assert_eq!(poly_rem(&[0, -2, 0, 1], &[-2, 0, 1]), Vec::<i128>::new());
    }
}

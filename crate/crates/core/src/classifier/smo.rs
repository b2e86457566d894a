//! Two-variable working-set solver for the soft-margin SVM dual.
//!
//! Solves `min ½ αᵀQα − eᵀα` subject to `yᵀα = 0` and `0 ≤ α ≤ C`, where
//! `Q_ab = y_a y_b K_ab`, choosing the maximal violating pair at every step.

/// Kernel values between training points.
pub trait Gram {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn get(&self, a: usize, b: usize) -> f64;
}

/// Dense row-major kernel matrix.
#[derive(Clone, Debug)]
pub struct DenseGram {
    n: usize,
    values: Vec<f64>,
}

impl DenseGram {
    pub fn new(n: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), n * n, "gram matrix must be n x n");
        DenseGram { n, values }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                values.push(f(a, b));
            }
        }
        DenseGram { n, values }
    }
}

impl Gram for DenseGram {
    fn len(&self) -> usize {
        self.n
    }

    fn get(&self, a: usize, b: usize) -> f64 {
        self.values[a * self.n + b]
    }
}

/// Gram matrix over distinct points plus a point → distinct-point map.
/// Training sets of projected sequences repeat a lot, so this is much
/// smaller than the full matrix.
#[derive(Clone, Debug)]
pub struct SharedGram {
    pub(crate) distinct: DenseGram,
    pub(crate) map: Vec<usize>,
}

impl Gram for SharedGram {
    fn len(&self) -> usize {
        self.map.len()
    }

    fn get(&self, a: usize, b: usize) -> f64 {
        self.distinct.get(self.map[a], self.map[b])
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverParams {
    pub c: f64,
    /// Stop when the maximal KKT violation falls below this.
    pub eps: f64,
    pub max_iter: usize,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            c: 1.0,
            eps: 1e-3,
            max_iter: 10_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualSolution {
    pub alpha: Vec<f64>,
    /// `f(x) = Σ α_t y_t K(x_t, x) + bias`
    pub bias: f64,
    /// Dual objective in maximization form, `Σα − ½ αᵀQα`.
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
}

const TAU: f64 = 1e-12;

/// Solves the binary dual. `y` holds +1/−1 labels.
pub fn solve<G: Gram>(gram: &G, y: &[f64], params: SolverParams) -> DualSolution {
    let n = y.len();
    debug_assert_eq!(gram.len(), n);
    let c = params.c;
    let q = |a: usize, b: usize| y[a] * y[b] * gram.get(a, b);
    let diag: Vec<f64> = (0..n).map(|t| gram.get(t, t)).collect();
    let mut alpha = vec![0.0; n];
    let mut grad = vec![-1.0; n];
    let in_up = |a: f64, yt: f64| (yt > 0.0 && a < c) || (yt < 0.0 && a > 0.0);
    let in_low = |a: f64, yt: f64| (yt < 0.0 && a < c) || (yt > 0.0 && a > 0.0);

    let mut iterations = 0;
    let mut converged = false;
    while iterations < params.max_iter {
        let mut i = usize::MAX;
        let mut j = usize::MAX;
        let mut gmax = f64::NEG_INFINITY;
        let mut gmin = f64::INFINITY;
        for t in 0..n {
            let v = -y[t] * grad[t];
            if in_up(alpha[t], y[t]) && v > gmax {
                gmax = v;
                i = t;
            }
            if in_low(alpha[t], y[t]) && v < gmin {
                gmin = v;
                j = t;
            }
        }
        if i == usize::MAX || j == usize::MAX || gmax - gmin < params.eps {
            converged = true;
            break;
        }
        iterations += 1;

        let (old_i, old_j) = (alpha[i], alpha[j]);
        let q_ij = q(i, j);
        if y[i] != y[j] {
            let mut quad = diag[i] + diag[j] + 2.0 * q_ij;
            if quad <= 0.0 {
                quad = TAU;
            }
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let mut quad = diag[i] + diag[j] - 2.0 * q_ij;
            if quad <= 0.0 {
                quad = TAU;
            }
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }

        let (d_i, d_j) = (alpha[i] - old_i, alpha[j] - old_j);
        for (t, g) in grad.iter_mut().enumerate() {
            *g += q(t, i) * d_i + q(t, j) * d_j;
        }
    }

    // bias from free variables, or the midpoint of the feasible interval
    let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut n_free, mut sum_free) = (0usize, 0.0);
    for t in 0..n {
        let yg = y[t] * grad[t];
        if alpha[t] >= c {
            if y[t] < 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else if alpha[t] <= 0.0 {
            if y[t] > 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else {
            n_free += 1;
            sum_free += yg;
        }
    }
    let rho = if n_free > 0 {
        sum_free / n_free as f64
    } else if ub.is_finite() && lb.is_finite() {
        (ub + lb) / 2.0
    } else if ub.is_finite() {
        ub
    } else if lb.is_finite() {
        lb
    } else {
        0.0
    };

    // Σα − ½αᵀQα = −½ Σ α_t (G_t − 1)  since G = Qα − e
    let objective = -0.5 * alpha.iter().zip(&grad).map(|(a, g)| a * (g - 1.0)).sum::<f64>();
    DualSolution {
        alpha,
        bias: -rho,
        objective,
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_pair() {
        let gram = DenseGram::new(2, vec![1.0, 0.0, 0.0, 1.0]);
        let sol = solve(&gram, &[1.0, -1.0], SolverParams::default());
        assert!(sol.converged);
        assert_eq!(sol.alpha, vec![1.0, 1.0]);
        assert_eq!(sol.bias, 0.0);
        assert_eq!(sol.objective, 1.0);
    }

    #[test]
    fn conflicting_duplicates_hit_the_bound() {
        let gram = DenseGram::new(2, vec![1.0; 4]);
        let sol = solve(&gram, &[1.0, -1.0], SolverParams::default());
        assert_eq!(sol.alpha, vec![1.0, 1.0]);
        assert_eq!(sol.bias, 0.0);
        assert_eq!(sol.objective, 2.0);
    }

    #[test]
    fn single_class_has_zero_alpha() {
        let gram = DenseGram::new(2, vec![1.0; 4]);
        let sol = solve(&gram, &[1.0, 1.0], SolverParams::default());
        assert!(sol.converged);
        assert_eq!(sol.alpha, vec![0.0, 0.0]);
    }
}

//! Exact rational revised simplex, specialised to the two LP shapes used
//! here: phase-1 feasibility of {A w = b, w >= 0} with a Farkas dual on
//! infeasibility, and maximisation of a linear objective over
//! {A w <= b, w >= 0} with b >= 0.
//!
//! Pivoting follows Bland's rule throughout, so every solve terminates
//! without perturbation. All arithmetic is over `BigRational`.

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// A structural LP column stored sparsely as (row, coefficient) pairs.
#[derive(Debug, Clone)]
pub struct SparseCol {
    pub entries: Vec<(usize, Rational)>,
}

impl SparseCol {
    fn dot(&self, y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (row, coeff) in &self.entries {
            acc += &y[*row] * coeff;
        }
        acc
    }
}

/// Outcome of the equality-form phase-1 solve.
pub enum Phase1Result {
    /// A non-negative solution of A w = b, indexed like the input columns.
    Feasible(Vec<Rational>),
    /// Row multipliers y with y.b > 0 and y.A_j <= 0 for every column.
    Infeasible(Vec<Rational>),
}

struct Tableau<'a> {
    m: usize,
    cols: &'a [SparseCol],
    /// Basis inverse, row-major m x m.
    binv: Vec<Vec<Rational>>,
    /// Current basic solution B^-1 b.
    xb: Vec<Rational>,
    /// Variable index held by each basis row. Indices < cols.len() are
    /// structural; index cols.len() + i is the unit column e_i.
    basis: Vec<usize>,
    in_basis: Vec<bool>,
}

impl<'a> Tableau<'a> {
    /// Start from the unit-column basis (artificials or slacks), so
    /// B^-1 = I and x_B = b. Requires b >= 0.
    fn with_unit_basis(m: usize, cols: &'a [SparseCol], b: &[Rational]) -> Self {
        debug_assert!(b.iter().all(|v| !v.is_negative()));
        let binv = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut in_basis = vec![false; cols.len() + m];
        for slot in in_basis.iter_mut().skip(cols.len()) {
            *slot = true;
        }
        Tableau {
            m,
            cols,
            binv,
            xb: b.to_vec(),
            basis: (0..m).map(|i| cols.len() + i).collect(),
            in_basis,
        }
    }

    /// Column of the full constraint matrix for variable index `var`.
    fn tableau_column(&self, var: usize) -> Vec<Rational> {
        if var >= self.cols.len() {
            let i = var - self.cols.len();
            self.binv.iter().map(|row| row[i].clone()).collect()
        } else {
            let col = &self.cols[var];
            self.binv.iter().map(|row| col.dot(row)).collect()
        }
    }

    /// y = c_B^T B^-1 for the given per-variable costs.
    fn duals(&self, cost: impl Fn(usize) -> Rational) -> Vec<Rational> {
        let cb: Vec<Rational> = self.basis.iter().map(|&v| cost(v)).collect();
        (0..self.m)
            .map(|j| {
                let mut acc = Rational::zero();
                for (i, c) in cb.iter().enumerate() {
                    if !c.is_zero() {
                        acc += c * &self.binv[i][j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Bland ratio test: leaving row minimising x_B[i]/u[i] over u[i] > 0,
    /// ties broken by smallest basis variable index. None if no u[i] > 0.
    fn leaving_row(&self, u: &[Rational]) -> Option<usize> {
        let mut best: Option<(Rational, usize, usize)> = None;
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() || ui.is_negative() {
                continue;
            }
            let ratio = &self.xb[i] / ui;
            match &best {
                Some((r, var, _)) if *r < ratio || (*r == ratio && *var < self.basis[i]) => {}
                _ => best = Some((ratio, self.basis[i], i)),
            }
        }
        best.map(|(_, _, i)| i)
    }

    fn pivot(&mut self, entering: usize, row: usize, u: &[Rational]) {
        let piv = u[row].clone();
        for j in 0..self.m {
            self.binv[row][j] /= &piv;
        }
        self.xb[row] /= &piv;
        let (pivot_row, pivot_x) = (self.binv[row].clone(), self.xb[row].clone());
        for i in 0..self.m {
            if i == row || u[i].is_zero() {
                continue;
            }
            for j in 0..self.m {
                let delta = &u[i] * &pivot_row[j];
                self.binv[i][j] -= delta;
            }
            let delta = &u[i] * &pivot_x;
            self.xb[i] -= delta;
        }
        self.in_basis[self.basis[row]] = false;
        self.in_basis[entering] = true;
        self.basis[row] = entering;
    }
}

/// Decide feasibility of {A w = b, w >= 0}, b >= 0, by phase-1 simplex
/// minimising the artificial mass. On infeasibility the returned dual
/// satisfies both Farkas conditions for the column set.
pub fn solve_equality_feasibility(
    m: usize,
    cols: &[SparseCol],
    b: &[Rational],
) -> Phase1Result {
    let cost = |var: usize| {
        if var >= cols.len() {
            Rational::one()
        } else {
            Rational::zero()
        }
    };
    let mut t = Tableau::with_unit_basis(m, cols, b);
    // Artificials never re-enter once they leave the basis.
    let mut artificial_alive: Vec<bool> = vec![true; m];

    loop {
        let y = t.duals(cost);
        // Bland: smallest-index variable with negative reduced cost.
        let mut entering = None;
        for (j, col) in cols.iter().enumerate() {
            if t.in_basis[j] {
                continue;
            }
            if col.dot(&y) > Rational::zero() {
                entering = Some(j);
                break;
            }
        }
        if entering.is_none() {
            for i in 0..m {
                let var = cols.len() + i;
                if artificial_alive[i] && !t.in_basis[var] && y[i] > Rational::one() {
                    entering = Some(var);
                    break;
                }
            }
        }
        let Some(entering) = entering else {
            // Optimal. Objective = total artificial mass.
            let mut infeasible = false;
            for (i, &var) in t.basis.iter().enumerate() {
                if var >= cols.len() && !t.xb[i].is_zero() {
                    infeasible = true;
                }
            }
            if infeasible {
                return Phase1Result::Infeasible(t.duals(cost));
            }
            let mut w = vec![Rational::zero(); cols.len()];
            for (i, &var) in t.basis.iter().enumerate() {
                if var < cols.len() {
                    w[var] = t.xb[i].clone();
                }
            }
            return Phase1Result::Feasible(w);
        };
        let u = t.tableau_column(entering);
        let row = t
            .leaving_row(&u)
            .expect("phase-1 objective is bounded below, ratio test cannot fail");
        let leaving = t.basis[row];
        if leaving >= cols.len() {
            artificial_alive[leaving - cols.len()] = false;
        }
        t.pivot(entering, row, &u);
    }
}

/// Maximise obj.w over {A w <= b, w >= 0} with b >= 0. Returns the exact
/// optimum and an optimal solution. Panics if the LP is unbounded, which
/// cannot happen for covering-shaped instances with finite b.
pub fn solve_max_under_capacity(
    m: usize,
    cols: &[SparseCol],
    b: &[Rational],
    obj: &[Rational],
) -> (Rational, Vec<Rational>) {
    assert_eq!(obj.len(), cols.len());
    let cost = |var: usize| {
        if var < obj.len() {
            obj[var].clone()
        } else {
            Rational::zero()
        }
    };
    let mut t = Tableau::with_unit_basis(m, cols, b);
    loop {
        let y = t.duals(&cost);
        // Maximising: enter the smallest-index variable with positive
        // reduced cost c_j - y.A_j.
        let mut entering = None;
        for (j, col) in cols.iter().enumerate() {
            if t.in_basis[j] {
                continue;
            }
            if obj[j].clone() - col.dot(&y) > Rational::zero() {
                entering = Some(j);
                break;
            }
        }
        if entering.is_none() {
            for i in 0..m {
                let var = cols.len() + i;
                if !t.in_basis[var] && y[i] < Rational::zero() {
                    entering = Some(var);
                    break;
                }
            }
        }
        let Some(entering) = entering else {
            let mut w = vec![Rational::zero(); cols.len()];
            let mut value = Rational::zero();
            for (i, &var) in t.basis.iter().enumerate() {
                if var < cols.len() {
                    value += &obj[var] * &t.xb[i];
                    w[var] = t.xb[i].clone();
                }
            }
            return (value, w);
        };
        let u = t.tableau_column(entering);
        let row = t.leaving_row(&u).expect("capacity LP cannot be unbounded");
        t.pivot(entering, row, &u);
    }
}

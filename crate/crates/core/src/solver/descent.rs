//! Limited-memory BFGS on `rate + μ·distortion` over the Ginibre
//! parametrisation, with central finite-difference gradients.

use std::collections::VecDeque;

use super::objective::{CqObjective, Evaluation};

const FD_STEP: f64 = 1e-5;
const HISTORY: usize = 8;
const STALL_WINDOW: usize = 50;
const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 50;

#[derive(Debug, Clone)]
pub(crate) struct Descended {
    pub theta: Vec<f64>,
    pub eval: Evaluation,
}

pub(crate) struct Descent<'a> {
    pub objective: &'a CqObjective,
    pub mu: f64,
    pub max_iterations: usize,
    pub tol: f64,
}

impl Descent<'_> {
    fn value(&self, theta: &[f64]) -> f64 {
        match self.objective.evaluate_params(theta) {
            Some(e) => e.rate + self.mu * e.distortion,
            None => f64::INFINITY,
        }
    }

    fn gradient(&self, theta: &mut [f64]) -> Vec<f64> {
        let mut g = vec![0.0; theta.len()];
        for i in 0..theta.len() {
            let orig = theta[i];
            theta[i] = orig + FD_STEP;
            let up = self.value(theta);
            theta[i] = orig - FD_STEP;
            let down = self.value(theta);
            theta[i] = orig;
            g[i] = if up.is_finite() && down.is_finite() { (up - down) / (2.0 * FD_STEP) } else { 0.0 };
        }
        g
    }

    /// Runs from `start`; the parameter vector is first rescaled to unit
    /// RMS entry (the effects are invariant under a global scale).
    pub fn run(&self, start: &[f64]) -> Option<Descended> {
        let mut x = normalized(start);
        let mut f = self.value(&x);
        if !f.is_finite() {
            return None;
        }
        let mut g = self.gradient(&mut x);
        let mut memory: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::with_capacity(HISTORY);
        let mut history = vec![f];
        let mut iterations = 0;

        while iterations < self.max_iterations {
            iterations += 1;
            if inf_norm(&g) < 1e-11 {
                break;
            }
            let mut dir = two_loop(&g, &memory);
            let mut slope = dot(&g, &dir);
            if !(slope < 0.0) {
                memory.clear();
                dir = g.iter().map(|v| -v).collect();
                slope = dot(&g, &dir);
            }
            let mut step = if memory.is_empty() { (1.0 / inf_norm(&g)).min(1.0) * 0.1 } else { 1.0 };
            let mut accepted = None;
            for _ in 0..MAX_BACKTRACKS {
                let trial: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + step * d).collect();
                let ft = self.value(&trial);
                if ft.is_finite() && ft <= f + ARMIJO * step * slope {
                    accepted = Some((trial, ft));
                    break;
                }
                step *= 0.5;
            }
            let Some((mut x_new, f_new)) = accepted else {
                if memory.is_empty() {
                    break;
                }
                memory.clear();
                continue;
            };
            let g_new = self.gradient(&mut x_new);
            let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
            let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
            let sy = dot(&s, &y);
            if sy > 1e-14 * norm(&s) * norm(&y) && sy > 0.0 {
                if memory.len() == HISTORY {
                    memory.pop_front();
                }
                memory.push_back((s, y, 1.0 / sy));
            }
            x = x_new;
            f = f_new;
            g = g_new;
            history.push(f);
            if history.len() > STALL_WINDOW {
                let past = history[history.len() - 1 - STALL_WINDOW];
                if past - f < self.tol {
                    break;
                }
            }
            if step * inf_norm(&dir) < 1e-14 {
                break;
            }
        }
        let eval = self.objective.evaluate_params(&x)?;
        Some(Descended { theta: x, eval })
    }
}

fn two_loop(g: &[f64], memory: &VecDeque<(Vec<f64>, Vec<f64>, f64)>) -> Vec<f64> {
    let mut q: Vec<f64> = g.to_vec();
    let mut alphas = Vec::with_capacity(memory.len());
    for (s, y, rho) in memory.iter().rev() {
        let a = rho * dot(s, &q);
        for (qi, yi) in q.iter_mut().zip(y) {
            *qi -= a * yi;
        }
        alphas.push(a);
    }
    if let Some((s, y, _)) = memory.back() {
        let gamma = dot(s, y) / dot(y, y);
        for qi in &mut q {
            *qi *= gamma;
        }
    }
    for ((s, y, rho), a) in memory.iter().zip(alphas.into_iter().rev()) {
        let b = rho * dot(y, &q);
        for (qi, si) in q.iter_mut().zip(s) {
            *qi += (a - b) * si;
        }
    }
    q.iter().map(|v| -v).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn inf_norm(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

fn normalized(theta: &[f64]) -> Vec<f64> {
    let rms = (dot(theta, theta) / theta.len().max(1) as f64).sqrt();
    if rms > 0.0 && rms.is_finite() {
        theta.iter().map(|v| v / rms).collect()
    } else {
        theta.to_vec()
    }
}

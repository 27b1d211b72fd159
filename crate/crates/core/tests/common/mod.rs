//! Independent oracles shared by the integration tests.

use std::collections::HashMap;

/// Law of continuous-time TASEP at time `t` started from `initial`, by
/// uniformization of the master equation on the states whose total
/// displacement is at most `max_moves`. Returns the distribution and the
/// mass lost to truncation in space and in the number of clock rings.
pub fn master_equation(initial: &[i64], t: f64, max_moves: usize) -> (HashMap<Vec<i64>, f64>, f64) {
    let n = initial.len();
    let rate = n as f64;
    let mut current: HashMap<Vec<i64>, f64> = HashMap::from([(initial.to_vec(), 1.0)]);
    let mut out: HashMap<Vec<i64>, f64> = HashMap::new();
    // Poisson(rate·t) weights of the number of uniformized clock rings
    let mut weight = (-rate * t).exp();
    let rings = max_moves * 4 + 60;
    for k in 0..=rings {
        for (s, p) in &current {
            *out.entry(s.clone()).or_insert(0.0) += weight * p;
        }
        let mut next: HashMap<Vec<i64>, f64> = HashMap::new();
        for (s, p) in &current {
            for i in 0..n {
                let free = i == 0 || s[i - 1] > s[i] + 1;
                let moved: i64 = s.iter().zip(initial).map(|(a, b)| a - b).sum();
                let target = if free && (moved as usize) < max_moves {
                    let mut u = s.clone();
                    u[i] += 1;
                    Some(u)
                } else if free {
                    None
                } else {
                    Some(s.clone())
                };
                if let Some(u) = target {
                    *next.entry(u).or_insert(0.0) += p / rate;
                }
            }
        }
        current = next;
        weight *= rate * t / (k + 1) as f64;
    }
    let mass: f64 = out.values().sum();
    (out, 1.0 - mass)
}

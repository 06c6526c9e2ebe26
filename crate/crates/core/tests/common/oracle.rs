//! Angular-momentum reference values that share no code with the library.
//!
//! Clebsch–Gordan coefficients are obtained by building the coupled states
//! `|J M⟩` explicitly in the product basis: the top state of each `J` is
//! fixed by orthogonality to the states already built (Condon–Shortley
//! phase), and the rest of the multiplet follows from the lowering operator.
//! 6j symbols then come from the recoupling overlap of four such coefficients.

use std::collections::HashMap;

type State = HashMap<i32, f64>; // 2·m1 -> amplitude

#[derive(Default)]
pub struct CgOracle {
    tables: HashMap<(i32, i32), HashMap<(i32, i32), State>>,
}

fn ladder(tj: i32, tm: i32) -> f64 {
    // √(j(j+1) − m(m−1)) in doubled units
    let (j, m) = (tj as f64 / 2.0, tm as f64 / 2.0);
    (j * (j + 1.0) - m * (m - 1.0)).max(0.0).sqrt()
}

fn build(tj1: i32, tj2: i32) -> HashMap<(i32, i32), State> {
    let mut states: HashMap<(i32, i32), State> = HashMap::new();
    let mut tj = tj1 + tj2;
    while tj >= (tj1 - tj2).abs() {
        let tm = tj;
        let m1_values: Vec<i32> = (-tj1..=tj1).step_by(2).filter(|&m1| (tm - m1).abs() <= tj2).collect();
        let higher: Vec<State> = states
            .iter()
            .filter(|((j, m), _)| *m == tm && *j > tj)
            .map(|(_, s)| s.clone())
            .collect();
        let mut best: Option<(f64, State)> = None;
        for &seed in &m1_values {
            let mut v: State = m1_values.iter().map(|&m1| (m1, 0.0)).collect();
            v.insert(seed, 1.0);
            for h in &higher {
                let overlap: f64 = v.iter().map(|(k, a)| a * h.get(k).copied().unwrap_or(0.0)).sum();
                for (k, a) in v.iter_mut() {
                    *a -= overlap * h.get(k).copied().unwrap_or(0.0);
                }
            }
            let norm = v.values().map(|a| a * a).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(n, _)| norm > *n) {
                best = Some((norm, v));
            }
        }
        let (norm, mut top) = best.expect("empty subspace");
        let sign = if top.get(&tj1).copied().unwrap_or(0.0) < 0.0 {
            -1.0
        } else {
            1.0
        };
        for a in top.values_mut() {
            *a *= sign / norm;
        }

        let mut current = top;
        let mut m = tm;
        loop {
            states.insert((tj, m), current.clone());
            if m == -tj {
                break;
            }
            let mut next: State = HashMap::new();
            for (&m1, &a) in &current {
                let m2 = m - m1;
                if m1 > -tj1 {
                    *next.entry(m1 - 2).or_default() += a * ladder(tj1, m1);
                }
                if m2 > -tj2 {
                    *next.entry(m1).or_default() += a * ladder(tj2, m2);
                }
            }
            let norm = ladder(tj, m);
            for a in next.values_mut() {
                *a /= norm;
            }
            current = next;
            m -= 2;
        }
        tj -= 2;
    }
    states
}

impl CgOracle {
    /// `⟨j1 m1 j2 m2 | J M⟩` with all arguments doubled.
    pub fn cg(&mut self, tj1: i32, tm1: i32, tj2: i32, tm2: i32, tj: i32, tm: i32) -> f64 {
        if tm1 + tm2 != tm || tm1.abs() > tj1 || tm2.abs() > tj2 || tm.abs() > tj {
            return 0.0;
        }
        if tj > tj1 + tj2 || tj < (tj1 - tj2).abs() || (tj1 + tj2 + tj) % 2 != 0 {
            return 0.0;
        }
        let table = self.tables.entry((tj1, tj2)).or_insert_with(|| build(tj1, tj2));
        table.get(&(tj, tm)).and_then(|s| s.get(&tm1)).copied().unwrap_or(0.0)
    }

    /// `(j1 j2 j3; m1 m2 m3)` from the coefficient with `M = −m3`.
    pub fn three_j(&mut self, tj1: i32, tj2: i32, tj3: i32, tm1: i32, tm2: i32, tm3: i32) -> f64 {
        let e = tj1 - tj2 - tm3;
        if e % 2 != 0 {
            return 0.0;
        }
        let sign = if (e / 2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sign * self.cg(tj1, tm1, tj2, tm2, tj3, -tm3) / ((tj3 + 1) as f64).sqrt()
    }

    /// `{j1 j2 j12; j3 J j23}` from the overlap
    /// `⟨(j1 j2) j12, j3; J M | j1, (j2 j3) j23; J M⟩` at `M = J`.
    pub fn six_j(&mut self, t: [i32; 6]) -> f64 {
        let [tj1, tj2, tj12, tj3, tj, tj23] = t;
        let tm = tj;
        let mut overlap = 0.0;
        for tm1 in (-tj1..=tj1).step_by(2) {
            for tm2 in (-tj2..=tj2).step_by(2) {
                let tm3 = tm - tm1 - tm2;
                if tm3.abs() > tj3 || (tj3 - tm3) % 2 != 0 {
                    continue;
                }
                let a = self.cg(tj1, tm1, tj2, tm2, tj12, tm1 + tm2);
                let b = self.cg(tj12, tm1 + tm2, tj3, tm3, tj, tm);
                let c = self.cg(tj2, tm2, tj3, tm3, tj23, tm2 + tm3);
                let d = self.cg(tj1, tm1, tj23, tm2 + tm3, tj, tm);
                overlap += a * b * c * d;
            }
        }
        let e = tj1 + tj2 + tj3 + tj;
        let sign = if (e / 2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sign * overlap / (((tj12 + 1) * (tj23 + 1)) as f64).sqrt()
    }
}

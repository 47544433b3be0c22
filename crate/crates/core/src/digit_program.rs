//! Exact minimization of total digit count under modular and covering constraints.
//!
//! A program has an ordered list of positions. Each position takes an integer number of
//! units in [0, cap], every unit adds a fixed vector to a state in Z_{n_1} × … × Z_{n_c}
//! and marks a set of cover bits. A solution returns every residue to zero, sets all
//! required cover bits and (optionally) uses at least one unit. The cost is the number
//! of units. Digit-sum programs map onto this by letting each base-p digit of each
//! variable be a position with cap p-1.
//!
//! Solved by backward dynamic programming over states; the lexicographically smallest
//! optimal unit vector is recovered by a greedy forward pass.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Position {
    pub contrib: Vec<u64>,
    pub mask: u64,
}

#[derive(Debug, Clone)]
pub struct DigitProgram {
    pub moduli: Vec<u64>,
    pub cap: u64,
    pub positions: Vec<Position>,
    pub required_mask: u64,
    pub require_nonzero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitSolution {
    pub cost: u64,
    pub units: Vec<u64>,
}

const INF: u32 = u32::MAX;

impl DigitProgram {
    fn residue_states(&self) -> u128 {
        self.moduli.iter().map(|&n| n as u128).product()
    }

    fn mask_states(&self) -> u64 {
        self.required_mask + 1
    }

    /// States × positions, the size of the DP table.
    pub fn table_size(&self) -> u128 {
        self.residue_states() * self.mask_states() as u128 * 2 * (self.positions.len() as u128 + 1)
    }

    pub fn solve(&self, limit: u64) -> Result<Option<DigitSolution>> {
        if self.required_mask & (self.required_mask + 1) != 0 {
            return Err(Error::InvalidInput("required mask must be of the form 2^b - 1".into()));
        }
        let size = self.table_size();
        if size > limit as u128 {
            return Err(Error::EnumerationLimitExceeded { size, limit });
        }
        let nres = self.residue_states() as usize;
        let nmask = self.mask_states() as usize;
        let nstates = nres * nmask * 2;
        let enc = |res: usize, mask: u64, nz: bool| (res * nmask + mask as usize) * 2 + nz as usize;

        // residue index arithmetic in mixed radix
        let radix: Vec<usize> = self.moduli.iter().map(|&n| n as usize).collect();
        let add_res = |res: usize, delta: &[u64]| -> usize {
            let mut out = 0;
            let mut rest = res;
            let mut mult = 1;
            for (c, &n) in radix.iter().enumerate() {
                let digit = rest % n;
                rest /= n;
                out += ((digit as u64 + delta[c]) % n as u64) as usize * mult;
                mult *= n;
            }
            out
        };

        let np = self.positions.len();
        // step[pos][res] = residue after one unit at `pos`
        let steps: Vec<Vec<usize>> = self
            .positions
            .iter()
            .map(|pos| {
                let delta: Vec<u64> = pos
                    .contrib
                    .iter()
                    .zip(&self.moduli)
                    .map(|(&c, &n)| c % n)
                    .collect();
                (0..nres).map(|r| add_res(r, &delta)).collect()
            })
            .collect();

        let mut best = vec![vec![INF; nstates]; np + 1];
        for mask in 0..nmask as u64 {
            for nz in [false, true] {
                if mask == self.required_mask && (nz || !self.require_nonzero) {
                    best[np][enc(0, mask, nz)] = 0;
                }
            }
        }
        for pos in (0..np).rev() {
            let (cur, next) = best.split_at_mut(pos + 1);
            let cur = &mut cur[pos];
            let next = &next[0];
            let pmask = self.positions[pos].mask;
            for res in 0..nres {
                for mask in 0..nmask as u64 {
                    for nz in [false, true] {
                        let mut r = res;
                        let mut b = next[enc(r, mask, nz)];
                        let m2 = (mask | pmask) & self.required_mask;
                        for d in 1..=self.cap {
                            r = steps[pos][r];
                            let v = next[enc(r, m2, true)];
                            if v != INF {
                                b = b.min(v + d as u32);
                            }
                        }
                        cur[enc(res, mask, nz)] = b;
                    }
                }
            }
        }
        let start = enc(0, 0, false);
        let total = best[0][start];
        if total == INF {
            return Ok(None);
        }
        // greedy forward pass: smallest unit count at each position that stays optimal
        let mut units = Vec::with_capacity(np);
        let (mut res, mut mask, mut nz) = (0usize, 0u64, false);
        let mut remaining = total;
        for (pos, step) in steps.iter().enumerate() {
            let mut r = res;
            let mut chosen = None;
            for d in 0..=self.cap {
                if d > 0 {
                    r = step[r];
                }
                let (m2, nz2) = if d == 0 {
                    (mask, nz)
                } else {
                    ((mask | self.positions[pos].mask) & self.required_mask, true)
                };
                let v = best[pos + 1][enc(r, m2, nz2)];
                if v != INF && v + d as u32 == remaining {
                    chosen = Some((d, r, m2, nz2));
                    break;
                }
            }
            let (d, r2, m2, nz2) = chosen.expect("optimal continuation exists");
            units.push(d);
            remaining -= d as u32;
            res = r2;
            mask = m2;
            nz = nz2;
        }
        Ok(Some(DigitSolution {
            cost: total as u64,
            units,
        }))
    }
}

/// Positions for variables r_0..r_{v-1} ∈ [0, p^len - 1], digits ordered most significant
/// first within each variable. `contrib(var, p^digit)` gives the unit contribution.
pub fn digit_positions(
    vars: usize,
    p: u64,
    len: u32,
    mut contrib: impl FnMut(usize, u64) -> (Vec<u64>, u64),
) -> Vec<Position> {
    let mut out = Vec::with_capacity(vars * len as usize);
    for v in 0..vars {
        for t in (0..len).rev() {
            let (c, mask) = contrib(v, p.pow(t));
            out.push(Position { contrib: c, mask });
        }
    }
    out
}

/// Reassembles variable values from units produced over `digit_positions`.
pub fn assemble(units: &[u64], p: u64, len: u32) -> Vec<u64> {
    units
        .chunks(len as usize)
        .map(|ds| ds.iter().fold(0u64, |acc, &d| acc * p + d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::digit_sum;

    #[test]
    fn smallest_multiple_of_seven() {
        // r ∈ [0,7], r ≡ 0 mod 7, r > 0, minimize S_2(r)
        let pos = digit_positions(1, 2, 3, |_, w| (vec![w], 0));
        let prog = DigitProgram {
            moduli: vec![7],
            cap: 1,
            positions: pos,
            required_mask: 0,
            require_nonzero: true,
        };
        let s = prog.solve(1 << 20).unwrap().unwrap();
        assert_eq!(s.cost, 3);
        assert_eq!(assemble(&s.units, 2, 3), vec![7]);
    }

    #[test]
    fn infeasible_and_limits() {
        let prog = DigitProgram {
            moduli: vec![3],
            cap: 1,
            positions: vec![],
            required_mask: 0,
            require_nonzero: true,
        };
        assert_eq!(prog.solve(100).unwrap(), None);
        let prog = DigitProgram {
            moduli: vec![1000],
            cap: 1,
            positions: digit_positions(1, 2, 10, |_, w| (vec![w], 0)),
            required_mask: 0,
            require_nonzero: true,
        };
        assert!(matches!(prog.solve(100), Err(Error::EnumerationLimitExceeded { .. })));
    }

    #[test]
    fn matches_brute_force_lexicographic() {
        // two variables in [0, 26] (p = 3, len = 3), constraints r0 + 2 r1 ≡ 0 mod 13,
        // r0 + r1 ≡ 0 mod 2, both variables positive via cover bits
        let p = 3u64;
        let pos = digit_positions(2, p, 3, |v, w| {
            (vec![if v == 0 { w } else { 2 * w }, w], 1 << v)
        });
        let prog = DigitProgram {
            moduli: vec![13, 2],
            cap: p - 1,
            positions: pos,
            required_mask: 3,
            require_nonzero: true,
        };
        let s = prog.solve(1 << 20).unwrap().unwrap();
        let mut best: Option<(u64, Vec<u64>)> = None;
        for r0 in 1..27u64 {
            for r1 in 1..27u64 {
                if (r0 + 2 * r1) % 13 == 0 && (r0 + r1) % 2 == 0 {
                    let c = digit_sum(r0, p) + digit_sum(r1, p);
                    if best.as_ref().is_none_or(|b| c < b.0) {
                        best = Some((c, vec![r0, r1]));
                    }
                }
            }
        }
        let (c, r) = best.unwrap();
        assert_eq!(s.cost, c);
        assert_eq!(assemble(&s.units, p, 3), r);
    }
}

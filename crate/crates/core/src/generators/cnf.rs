use std::fmt::Write;

use crate::error::{Error, Result};

/// A literal: `+i` is variable `i`, `-i` its negation (ids from 1).
pub type Literal = i32;

/// A 3CNF formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl Cnf {
    pub fn new(vars: usize, clauses: &[Vec<Literal>]) -> Result<Cnf> {
        if vars == 0 || clauses.is_empty() {
            return Err(Error::BadFormula(
                "formula needs a variable and a clause".into(),
            ));
        }
        let mut out = Vec::with_capacity(clauses.len());
        for (j, c) in clauses.iter().enumerate() {
            if c.len() != 3 {
                return Err(Error::BadFormula(format!(
                    "clause {} has {} literals",
                    j + 1,
                    c.len()
                )));
            }
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > vars {
                    return Err(Error::BadFormula(format!("literal {l} out of range")));
                }
            }
            out.push([c[0], c[1], c[2]]);
        }
        Ok(Cnf { vars, clauses: out })
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    /// Reads DIMACS CNF. Clauses may span lines and end with `0`.
    pub fn parse_dimacs(text: &str) -> Result<Cnf> {
        let mut vars = None;
        let mut declared = 0;
        let mut clauses = Vec::new();
        let mut cur = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let f: Vec<&str> = line.split_whitespace().collect();
                if f.len() != 4 || f[1] != "cnf" {
                    return Err(Error::Parse {
                        line: ln + 1,
                        msg: "expected `p cnf <vars> <clauses>`".into(),
                    });
                }
                let num = |s: &str| {
                    s.parse::<usize>().map_err(|_| Error::Parse {
                        line: ln + 1,
                        msg: "header counts must be integers".into(),
                    })
                };
                vars = Some(num(f[2])?);
                declared = num(f[3])?;
                continue;
            }
            for tok in line.split_whitespace() {
                let l: Literal = tok.parse().map_err(|_| Error::Parse {
                    line: ln + 1,
                    msg: format!("bad literal `{tok}`"),
                })?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut cur));
                } else {
                    cur.push(l);
                }
            }
        }
        if !cur.is_empty() {
            clauses.push(cur);
        }
        let vars = vars.ok_or(Error::Parse {
            line: 1,
            msg: "missing `p cnf` header".into(),
        })?;
        if clauses.len() != declared {
            return Err(Error::BadFormula(format!(
                "header declares {declared} clauses, found {}",
                clauses.len()
            )));
        }
        Cnf::new(vars, &clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            let _ = writeln!(s, "{} {} {} 0", c[0], c[1], c[2]);
        }
        s
    }

    /// `tau[i]` is the value of variable `i + 1`.
    pub fn satisfies(&self, tau: &[bool]) -> bool {
        tau.len() == self.vars
            && self
                .clauses
                .iter()
                .all(|c| c.iter().any(|&l| literal_true(l, tau)))
    }

    /// First satisfying assignment in binary counting order (variable 1 is
    /// the low bit, `false` before `true`).
    pub fn satisfying_assignment(&self) -> Option<Vec<bool>> {
        assert!(self.vars < 31, "brute force limited to 30 variables");
        (0u32..1 << self.vars)
            .map(|bits| {
                (0..self.vars)
                    .map(|i| bits >> i & 1 == 1)
                    .collect::<Vec<_>>()
            })
            .find(|tau| self.satisfies(tau))
    }

    /// Every formula with `1..=max_vars` variables and `1..=max_clauses`
    /// clauses, where a clause is a multiset of three literals and a
    /// formula a multiset of clauses.
    pub fn family(max_vars: usize, max_clauses: usize) -> Vec<Cnf> {
        let mut out = Vec::new();
        for vars in 1..=max_vars {
            let lits: Vec<Literal> = (1..=vars as Literal).flat_map(|v| [v, -v]).collect();
            let mut pool = Vec::new();
            for a in 0..lits.len() {
                for b in a..lits.len() {
                    for c in b..lits.len() {
                        pool.push([lits[a], lits[b], lits[c]]);
                    }
                }
            }
            for m in 1..=max_clauses {
                multisets(pool.len(), m, &mut |idx| {
                    out.push(Cnf {
                        vars,
                        clauses: idx.iter().map(|&i| pool[i]).collect(),
                    })
                });
            }
        }
        out
    }
}

pub(crate) fn literal_true(l: Literal, tau: &[bool]) -> bool {
    tau[l.unsigned_abs() as usize - 1] == (l > 0)
}

fn multisets(n: usize, m: usize, f: &mut impl FnMut(&[usize])) {
    fn go(n: usize, m: usize, from: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == m {
            f(cur);
            return;
        }
        for i in from..n {
            cur.push(i);
            go(n, m, i, cur, f);
            cur.pop();
        }
    }
    go(n, m, 0, &mut Vec::new(), f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let text = "c example\np cnf 4 2\n1 3 -4 0\n-2 3\n4 0\n";
        let f = Cnf::parse_dimacs(text).unwrap();
        assert_eq!(f.clauses, vec![[1, 3, -4], [-2, 3, 4]]);
        assert_eq!(Cnf::parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(
            Cnf::new(2, &[vec![1, 2]]),
            Err(Error::BadFormula(_))
        ));
        assert!(matches!(
            Cnf::new(2, &[vec![1, 2, 3]]),
            Err(Error::BadFormula(_))
        ));
        assert!(matches!(Cnf::new(2, &[]), Err(Error::BadFormula(_))));
        assert!(Cnf::parse_dimacs("1 2 3 0\n").is_err());
        assert!(Cnf::parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err());
    }

    #[test]
    fn satisfiability() {
        let f = Cnf::new(1, &[vec![1, 1, 1], vec![-1, -1, -1]]).unwrap();
        assert_eq!(f.satisfying_assignment(), None);
        let f = Cnf::new(2, &[vec![1, 2, 2], vec![-1, -1, 2]]).unwrap();
        assert_eq!(f.satisfying_assignment(), Some(vec![false, true]));
        assert!(!f.satisfies(&[true, false]));
    }

    #[test]
    fn family_sizes() {
        // one variable: 4 clauses; formulas are multisets of them
        assert_eq!(Cnf::family(1, 2).len(), 4 + 10);
        // two variables: C(6, 3) = 20 clauses
        assert_eq!(Cnf::family(2, 1).len(), 4 + 20);
    }
}

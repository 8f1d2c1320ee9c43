use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("group has order 0")]
    Empty,
    #[error("table row {row} has {got} entries, expected {expected}")]
    RowLength { row: usize, got: usize, expected: usize },
    #[error("table cell ({row}, {col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("not a Latin square: cell ({row}, {col}) repeats value {value}")]
    NotLatin { row: usize, col: usize, value: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("group `{0}` is not abelian")]
    NotAbelian(String),
}

/// A finite group given by its Cayley table on `0..order`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    pub elements: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    /// Invariant factors when built as a product of cyclic groups.
    pub factors: Option<Vec<usize>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

impl FiniteGroup {
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::RowLength {
                    row,
                    got: r.len(),
                    expected: n,
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::OutOfRange { row, col, value });
                }
            }
        }
        // first repeated cell in row-major scan, rows before columns
        for row in 0..n {
            let mut seen = vec![false; n];
            for col in 0..n {
                let v = table[row][col];
                if seen[v] {
                    return Err(GroupError::NotLatin { row, col, value: v });
                }
                seen[v] = true;
            }
        }
        for col in 0..n {
            let mut seen = vec![false; n];
            for row in 0..n {
                let v = table[row][col];
                if seen[v] {
                    return Err(GroupError::NotLatin { row, col, value: v });
                }
                seen[v] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|g| (0..n).find(|&h| table[g][h] == identity).unwrap())
            .collect();
        Ok(Self {
            name: name.to_string(),
            elements: (0..n).map(|i| i.to_string()).collect(),
            table,
            inverse,
            identity,
            factors: None,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        Self::abelian(&[n]).expect("cyclic group")
    }

    /// `Z_{n1} × ... × Z_{nk}`, element index in row-major mixed radix.
    pub fn abelian(factors: &[usize]) -> Result<Self, GroupError> {
        if factors.contains(&0) {
            return Err(GroupError::Empty);
        }
        let n: usize = factors.iter().product();
        let digits = |mut i: usize| {
            let mut d = vec![0; factors.len()];
            for k in (0..factors.len()).rev() {
                d[k] = i % factors[k];
                i /= factors[k];
            }
            d
        };
        let encode = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (x, f)| acc * f + x);
        let table = (0..n)
            .map(|a| {
                let da = digits(a);
                (0..n)
                    .map(|b| {
                        let db = digits(b);
                        let s: Vec<usize> = (0..factors.len())
                            .map(|k| (da[k] + db[k]) % factors[k])
                            .collect();
                        encode(&s)
                    })
                    .collect()
            })
            .collect();
        let name = if factors.is_empty() {
            "Z1".to_string()
        } else {
            factors
                .iter()
                .map(|f| format!("Z{f}"))
                .collect::<Vec<_>>()
                .join("xZ")
                .replace("xZZ", "xZ")
        };
        let mut g = Self::from_table(&name, table)?;
        g.elements = (0..n)
            .map(|i| {
                let d = digits(i);
                if d.len() == 1 {
                    d[0].to_string()
                } else {
                    format!(
                        "({})",
                        d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                    )
                }
            })
            .collect();
        g.factors = Some(factors.to_vec());
        Ok(g)
    }

    /// The symmetric group on three letters, elements listed as permutations
    /// of `012` in lexicographic order.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        // (p q)(i) = p(q(i))
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| idx([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        let mut g = Self::from_table("S3", table).expect("S3 table");
        g.elements = perms
            .iter()
            .map(|p| format!("{}{}{}", p[0], p[1], p[2]))
            .collect();
        g
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Parse the line-oriented group format.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or(GroupError::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 || h[0] != "group" || h[2] != "order" {
            return Err(GroupError::Parse {
                line: hl,
                msg: "expected `group <name> order <n>`".into(),
            });
        }
        let name = h[1];
        let n: usize = h[3].parse().map_err(|_| GroupError::Parse {
            line: hl,
            msg: format!("bad order `{}`", h[3]),
        })?;
        let (bl, body) = lines.next().ok_or(GroupError::Parse {
            line: hl + 1,
            msg: "expected `table` or `abelian`".into(),
        })?;
        let mut words = body.split_whitespace();
        match words.next() {
            Some("abelian") => {
                let factors = words
                    .map(|w| {
                        w.parse::<usize>().map_err(|_| GroupError::Parse {
                            line: bl,
                            msg: format!("bad factor `{w}`"),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let mut g = Self::abelian(&factors)?;
                if g.order() != n {
                    return Err(GroupError::Parse {
                        line: bl,
                        msg: format!("factors give order {}, header says {n}", g.order()),
                    });
                }
                g.name = name.to_string();
                if let Some((l, _)) = lines.next() {
                    return Err(GroupError::Parse {
                        line: l,
                        msg: "trailing content".into(),
                    });
                }
                Ok(g)
            }
            Some("table") => {
                let mut table = Vec::with_capacity(n);
                for (l, row) in lines {
                    let r = row
                        .split_whitespace()
                        .map(|w| {
                            w.parse::<usize>().map_err(|_| GroupError::Parse {
                                line: l,
                                msg: format!("bad entry `{w}`"),
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    table.push(r);
                }
                if table.len() != n {
                    return Err(GroupError::Parse {
                        line: bl,
                        msg: format!("expected {n} table rows, found {}", table.len()),
                    });
                }
                Self::from_table(name, table)
            }
            _ => Err(GroupError::Parse {
                line: bl,
                msg: "expected `table` or `abelian`".into(),
            }),
        }
    }

    /// Serialize in the format accepted by [`FiniteGroup::parse`].
    pub fn to_file_string(&self) -> String {
        let mut s = format!("group {} order {}\n", self.name, self.order());
        match &self.factors {
            Some(f) => {
                s.push_str("abelian");
                for x in f {
                    s.push_str(&format!(" {x}"));
                }
                s.push('\n');
            }
            None => {
                s.push_str("table\n");
                for r in &self.table {
                    let row: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                    s.push_str(&row.join(" "));
                    s.push('\n');
                }
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_abelian_and_table() {
        let g = FiniteGroup::parse("group v order 4\nabelian 2 2\n").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.name, "v");
        let t = FiniteGroup::parse("group z2 order 2\ntable\n0 1\n1 0\n").unwrap();
        assert_eq!(t.mul(1, 1), 0);
    }

    #[test]
    fn names_first_bad_cell() {
        let err = FiniteGroup::parse("group bad order 3\ntable\n0 1 2\n1 1 0\n2 0 1\n").unwrap_err();
        assert_eq!(
            err,
            GroupError::NotLatin {
                row: 1,
                col: 1,
                value: 1
            }
        );
    }

    #[test]
    fn s3_is_nonabelian() {
        let g = FiniteGroup::s3();
        assert!(!g.is_abelian());
        assert_eq!(g.identity(), 0);
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn round_trip_file() {
        for g in [FiniteGroup::abelian(&[2, 3]).unwrap(), FiniteGroup::s3()] {
            let h = FiniteGroup::parse(&g.to_file_string()).unwrap();
            assert_eq!(h.table(), g.table());
        }
    }
}

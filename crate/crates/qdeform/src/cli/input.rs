//! Readers for cocycle and system files.
//!
//! A cocycle file holds one or more sections. A `bicharacter <label>`
//! section lists `s t turns` lines, unlisted pairs being `0`; a
//! `raw <label>` section lists the rows of `Ω` on `H ⊗ H`, each entry as a
//! `re im` pair. A system file is a list of `key value` lines:
//!
//! ```text
//! system cgd
//! group z2xz2.grp
//! algebra dual-crossed-scalars
//! cocycle sigma.coc
//! verify ttwisted tva dual-action
//! ```
//!
//! Relative paths inside a system file resolve against its directory.

use crate::cocycles::{scalar_cocycle, Bicharacter, DualCocycle, Provenance};
use crate::fqg::{FiniteGroup, FiniteQuantumGroup, Kind};
use crate::tensorkit::linalg::CMat;
use crate::tensorkit::C64;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: line {line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("{0}")]
    Invalid(String),
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn load_group(path: &Path) -> Result<FiniteGroup, InputError> {
    FiniteGroup::parse(&read(path)?).map_err(|e| InputError::Invalid(format!("{}: {e}", path.display())))
}

/// Ambient quantum group for a group file: the group algebra when the group
/// is abelian, so that cocycles are scalar tables, the function algebra
/// otherwise.
pub fn default_ambient(g: &FiniteGroup) -> FiniteQuantumGroup {
    if g.is_abelian() {
        FiniteQuantumGroup::group_algebra(g)
    } else {
        FiniteQuantumGroup::function_algebra(g)
    }
}

pub fn ambient(g: &FiniteGroup, kind: Option<Kind>) -> FiniteQuantumGroup {
    match kind {
        Some(Kind::GroupAlgebra) => FiniteQuantumGroup::group_algebra(g),
        Some(Kind::FunctionAlgebra) => FiniteQuantumGroup::function_algebra(g),
        None => default_ambient(g),
    }
}

fn parse_kind(s: &str) -> Option<Kind> {
    match s {
        "group_algebra" => Some(Kind::GroupAlgebra),
        "function_algebra" => Some(Kind::FunctionAlgebra),
        _ => None,
    }
}

enum Section {
    Bicharacter(Vec<Vec<f64>>),
    Raw(Vec<Vec<C64>>),
}

/// Parse every section of a cocycle file against the ambient `q`. Nothing
/// is verified here.
pub fn parse_cocycles(
    text: &str,
    q: &FiniteQuantumGroup,
    path: &str,
) -> Result<Vec<DualCocycle>, InputError> {
    let n = q.n;
    let err = |line: usize, msg: String| InputError::Parse {
        path: path.to_string(),
        line,
        msg,
    };
    let mut out = Vec::new();
    let mut current: Option<(usize, String, Section)> = None;
    let finish = |cur: (usize, String, Section)| -> Result<DualCocycle, InputError> {
        let (line, label, sec) = cur;
        match sec {
            Section::Bicharacter(t) => scalar_cocycle(q, &t, Provenance::Bicharacter(t.clone()), &label)
                .map_err(|e| err(line, e.to_string())),
            Section::Raw(rows) => {
                if rows.len() != n * n {
                    return Err(err(line, format!("expected {} rows, found {}", n * n, rows.len())));
                }
                let omega = CMat::from_fn(n * n, n * n, |i, j| rows[i][j]);
                Ok(DualCocycle::new(q, omega, Provenance::Raw, &label))
            }
        }
    };
    for (l, text) in lines(text) {
        let words: Vec<&str> = text.split_whitespace().collect();
        match words[0] {
            "bicharacter" | "raw" => {
                if let Some(cur) = current.take() {
                    out.push(finish(cur)?);
                }
                let label = words.get(1).map(|s| s.to_string()).unwrap_or_else(|| format!("c{}", out.len()));
                let sec = if words[0] == "raw" {
                    Section::Raw(Vec::new())
                } else {
                    Section::Bicharacter(vec![vec![0.0; n]; n])
                };
                current = Some((l, label, sec));
            }
            _ => {
                let Some((_, _, sec)) = current.as_mut() else {
                    return Err(err(l, "expected `bicharacter <label>` or `raw <label>`".into()));
                };
                let nums = words
                    .iter()
                    .map(|w| w.parse::<f64>().map_err(|_| err(l, format!("bad number `{w}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                match sec {
                    Section::Bicharacter(t) => {
                        if nums.len() != 3 {
                            return Err(err(l, "expected `s t turns`".into()));
                        }
                        let (s, r) = (nums[0], nums[1]);
                        if s.fract() != 0.0 || r.fract() != 0.0 || s < 0.0 || r < 0.0 {
                            return Err(err(l, "element indices must be non-negative integers".into()));
                        }
                        let (s, r) = (s as usize, r as usize);
                        if s >= n || r >= n {
                            return Err(err(l, format!("element index out of range 0..{n}")));
                        }
                        t[s][r] = nums[2];
                    }
                    Section::Raw(rows) => {
                        if nums.len() != 2 * n * n {
                            return Err(err(l, format!("expected {} numbers per row", 2 * n * n)));
                        }
                        rows.push(nums.chunks(2).map(|p| C64::new(p[0], p[1])).collect());
                    }
                }
            }
        }
    }
    if let Some(cur) = current.take() {
        out.push(finish(cur)?);
    }
    if out.is_empty() {
        return Err(err(1, "no cocycle sections".into()));
    }
    Ok(out)
}

/// Load and verify; failing cocycles are refused unless `force` is set.
pub fn load_cocycles(
    path: &Path,
    q: &FiniteQuantumGroup,
    force: bool,
) -> Result<Vec<DualCocycle>, InputError> {
    let cs = parse_cocycles(&read(path)?, q, &path.display().to_string())?;
    if !force {
        for c in &cs {
            if let Some(what) = c.verify().failure() {
                return Err(InputError::Invalid(format!(
                    "{}: cocycle `{}` fails {what} (use --force-unverified to load anyway)",
                    path.display(),
                    c.label
                )));
            }
        }
    }
    Ok(cs)
}

/// Cocycle file text for one bicharacter, listing nonzero entries only.
pub fn bicharacter_file(b: &Bicharacter, label: &str) -> String {
    let t = b.table();
    let mut s = format!("bicharacter {label}\n");
    for (i, row) in t.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if *x != 0.0 {
                s.push_str(&format!("{i} {j} {x}\n"));
            }
        }
    }
    s
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SystemFile {
    pub name: String,
    pub group: Option<PathBuf>,
    pub algebra: Option<String>,
    pub cocycle: Option<PathBuf>,
    pub quantum: Option<Kind>,
    /// Verifier names; empty means all that apply.
    pub verify: Vec<String>,
}

pub fn parse_system(text: &str, base: &Path, path: &str) -> Result<SystemFile, InputError> {
    let err = |line: usize, msg: String| InputError::Parse {
        path: path.to_string(),
        line,
        msg,
    };
    let mut sys = SystemFile::default();
    for (l, text) in lines(text) {
        let (key, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let rest = rest.trim();
        if rest.is_empty() {
            return Err(err(l, format!("`{key}` needs a value")));
        }
        match key {
            "system" => sys.name = rest.to_string(),
            "group" => sys.group = Some(base.join(rest)),
            "algebra" => sys.algebra = Some(rest.to_string()),
            "cocycle" => sys.cocycle = Some(base.join(rest)),
            "quantum" => {
                sys.quantum = Some(parse_kind(rest).ok_or_else(|| {
                    err(l, "expected `group_algebra` or `function_algebra`".into())
                })?)
            }
            "verify" => sys.verify.extend(rest.split_whitespace().map(str::to_string)),
            other => return Err(err(l, format!("unknown key `{other}`"))),
        }
    }
    Ok(sys)
}

pub fn load_system(path: &Path) -> Result<SystemFile, InputError> {
    let base = path.parent().unwrap_or(Path::new("."));
    parse_system(&read(path)?, base, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::enumerate_bicharacters;

    fn klein() -> FiniteQuantumGroup {
        FiniteQuantumGroup::group_algebra(&FiniteGroup::abelian(&[2, 2]).unwrap())
    }

    #[test]
    fn bicharacter_file_round_trips() {
        let q = klein();
        for b in enumerate_bicharacters(&q.group).unwrap() {
            let text = bicharacter_file(&b, "b");
            let c = &parse_cocycles(&text, &q, "mem").unwrap()[0];
            let want = crate::cocycles::bicharacter_cocycle(&q, &b.table(), "b").unwrap();
            assert_eq!(c.omega, want.omega);
        }
    }

    #[test]
    fn raw_section_reads_rows() {
        let q = FiniteQuantumGroup::group_algebra(&FiniteGroup::cyclic(2));
        let mut text = String::from("raw one\n");
        for i in 0..4 {
            let row: Vec<String> = (0..4)
                .map(|j| if i == j { "1 0".to_string() } else { "0 0".to_string() })
                .collect();
            text.push_str(&row.join(" "));
            text.push('\n');
        }
        let c = &parse_cocycles(&text, &q, "mem").unwrap()[0];
        assert!(c.verify().passes());
        assert_eq!(c.label, "one");
    }

    #[test]
    fn reports_line_of_bad_entry() {
        let q = klein();
        let e = parse_cocycles("bicharacter s\n0 1 0.5\n1 9 0.5\n", &q, "f.coc").unwrap_err();
        assert!(matches!(e, InputError::Parse { line: 3, .. }), "{e}");
    }

    #[test]
    fn non_cocycle_is_a_parse_success_but_fails_verify() {
        let q = FiniteQuantumGroup::group_algebra(&FiniteGroup::cyclic(3));
        let c = &parse_cocycles("bicharacter odd\n1 1 0.1\n", &q, "mem").unwrap()[0];
        assert!(!c.verify().passes());
    }

    #[test]
    fn system_paths_resolve_against_file() {
        let s = parse_system(
            "system cgd\ngroup g.grp\nalgebra matrix\ncocycle c.coc\nverify ttwisted tva\n",
            Path::new("/data"),
            "cgd.sys",
        )
        .unwrap();
        assert_eq!(s.group.unwrap(), Path::new("/data/g.grp"));
        assert_eq!(s.verify, vec!["ttwisted", "tva"]);
        assert!(parse_system("colour red\n", Path::new("."), "x").is_err());
    }
}

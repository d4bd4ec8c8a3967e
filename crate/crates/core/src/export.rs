//! Scripts for external computer algebra systems.
//!
//! The exported ideal is `J = J_1 ⋯ J_s` over the triples of the bundle
//! (only the retained ones when a GIT-cone filter was applied), each `J_i`
//! including the stabilizer equations when present.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poly::{parse_polynomial, MatrixVars, Polynomial, Style, VarNames};
use crate::report::{ResultBundle, TripleReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dialect {
    SingularLike,
    Macaulay2Like,
}

impl std::str::FromStr for Dialect {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singular-like" => Ok(Dialect::SingularLike),
            "macaulay2-like" => Ok(Dialect::Macaulay2Like),
            _ => Err(Error::UnsupportedDialect(s.to_string())),
        }
    }
}

/// `Y_k` and `Z`.
struct M2Vars(MatrixVars);

impl VarNames for M2Vars {
    fn name(&self, var: usize) -> String {
        if var == self.0.z() {
            "Z".to_string()
        } else {
            format!("Y_{}", var + 1)
        }
    }
    fn resolve(&self, name: &str, index: Option<u64>) -> Option<usize> {
        self.0.resolve(name, index)
    }
}

fn triple_generators(t: &TripleReport, names: &MatrixVars) -> Result<Vec<Polynomial>> {
    t.ideal
        .iter()
        .chain(t.stabilizer.iter().flatten())
        .map(|g| parse_polynomial(g, names))
        .collect()
}

fn selected(bundle: &ResultBundle) -> Vec<&TripleReport> {
    let Some(p) = &bundle.presentation else { return Vec::new() };
    match &bundle.filtered {
        Some(f) => f.retained.iter().filter_map(|&i| p.triples.get(i - 1)).collect(),
        None => p.triples.iter().collect(),
    }
}

/// Renders `bundle` as a script in `dialect` (`singular-like` or
/// `macaulay2-like`).
pub fn export_cas_script(bundle: &ResultBundle, dialect: &str) -> Result<String> {
    let dialect: Dialect = dialect.parse()?;
    let Some(p) = &bundle.presentation else {
        return Err(Error::Structure("the report holds no Aut_K(S) presentation".into()));
    };
    let n2 = p.n * p.n;
    let names = MatrixVars { n: p.n };
    let factors: Vec<Vec<Polynomial>> = selected(bundle)
        .into_iter()
        .map(|t| triple_generators(t, &names))
        .collect::<Result<_>>()?;
    let rows = p.variable_degrees.first().map_or(0, Vec::len);
    let weights: Vec<Vec<i64>> = (0..rows)
        .map(|r| p.variable_degrees.iter().map(|c| c[r]).collect())
        .collect();

    let mut out = String::new();
    match dialect {
        Dialect::SingularLike => {
            let _ = writeln!(out, "ring Sprime = 0,(Y(1..{n2}),Z),dp;");
            if rows > 0 {
                let entries: Vec<String> = weights.iter().flatten().map(ToString::to_string).collect();
                let _ = writeln!(out, "intmat Qprime[{rows}][{}] = {};", n2 + 1, entries.join(","));
            }
            if factors.is_empty() {
                return Ok(out);
            }
            for (i, gens) in factors.iter().enumerate() {
                let list: Vec<String> = gens
                    .iter()
                    .map(|g| g.display(&names, Style::Explicit).to_string())
                    .collect();
                let body = if list.is_empty() { "0".to_string() } else { list.join(",\n  ") };
                let _ = writeln!(out, "ideal J{} =\n  {body};", i + 1);
            }
            let product: Vec<String> = (1..=factors.len()).map(|i| format!("J{i}")).collect();
            let _ = writeln!(out, "ideal J = {};", product.join("*"));
            let _ = writeln!(out, "dim(std(J));");
            let _ = writeln!(out, "LIB \"primdec.lib\";");
            let _ = writeln!(out, "def P = absPrimdecGTZ(J);");
        }
        Dialect::Macaulay2Like => {
            let m2 = M2Vars(names);
            let _ = writeln!(out, "Sprime = QQ[Y_1..Y_{n2}, Z, MonomialOrder => GRevLex];");
            if rows > 0 {
                let lines: Vec<String> = weights
                    .iter()
                    .map(|r| format!("{{{}}}", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
                    .collect();
                let _ = writeln!(out, "Qprime = matrix {{{}}};", lines.join(", "));
            }
            if factors.is_empty() {
                return Ok(out);
            }
            for (i, gens) in factors.iter().enumerate() {
                let list: Vec<String> = gens
                    .iter()
                    .map(|g| g.display(&m2, Style::Explicit).to_string())
                    .collect();
                let body = if list.is_empty() { "0_Sprime".to_string() } else { list.join(",\n  ") };
                let _ = writeln!(out, "J{} = ideal(\n  {body});", i + 1);
            }
            let product: Vec<String> = (1..=factors.len()).map(|i| format!("J{i}")).collect();
            let _ = writeln!(out, "J = {};", product.join("*"));
            let _ = writeln!(out, "dim J");
            let _ = writeln!(out, "P = decompose J;");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse_input;

    fn bundle() -> ResultBundle {
        let input = parse_input(include_str!("../inputs/example_running.toml")).unwrap();
        let stab = crate::stabilizer::aut_grad_alg(&input.ideal().unwrap()).unwrap();
        let mut b = ResultBundle::new(input);
        b.set_stabilizer(&stab);
        b
    }

    #[test]
    fn singular_script() {
        let s = export_cas_script(&bundle(), "singular-like").unwrap();
        assert!(s.starts_with("ring Sprime = 0,(Y(1..64),Z),dp;\n"));
        assert!(s.contains("ideal J = J1*J2*J3*J4;"));
        assert!(s.contains("-Y(1)*Y(13)*Y(24)*Y(31)*Y(34)*Y(46)*Y(52)*Y(59)*Z - 1"));
        assert!(s.contains("absPrimdecGTZ"));
        assert_eq!(s, export_cas_script(&bundle(), "singular-like").unwrap());
    }

    #[test]
    fn macaulay_script() {
        let s = export_cas_script(&bundle(), "macaulay2-like").unwrap();
        assert!(s.starts_with("Sprime = QQ[Y_1..Y_64, Z, MonomialOrder => GRevLex];\n"));
        assert!(s.contains("Y_1*Y_13*Y_24"));
        assert!(s.contains("J = J1*J2*J3*J4;"));
    }

    #[test]
    fn unknown_dialect() {
        assert_eq!(
            export_cas_script(&bundle(), "maple").unwrap_err(),
            Error::UnsupportedDialect("maple".into())
        );
    }

    #[test]
    fn no_triples_gives_ring_only() {
        let mut b = bundle();
        b.presentation.as_mut().unwrap().triples.clear();
        let s = export_cas_script(&b, "singular-like").unwrap();
        assert!(!s.contains("ideal"));
        assert!(s.starts_with("ring Sprime"));
    }
}

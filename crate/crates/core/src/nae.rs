//! NotAllEqual-3-SAT: instances of non-negated 3-clauses, blue/red variable
//! colorings, a DIMACS-like text format and a brute-force solver.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Color;

/// Largest variable count [`solve_brute_force`] will enumerate.
pub const BRUTE_FORCE_VARIABLE_LIMIT: usize = 30;

/// A clause `(x, y, z)` of three distinct 1-based variable indices.
pub type Clause = [usize; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NaeError {
    #[error("clause {clause}: variable {variable} outside 1..={variable_count}")]
    VariableOutOfRange {
        clause: usize,
        variable: usize,
        variable_count: usize,
    },
    #[error("clause {clause}: variable {variable} repeated")]
    RepeatedVariable { clause: usize, variable: usize },
    #[error("brute force refuses {0} variables (limit {BRUTE_FORCE_VARIABLE_LIMIT})")]
    TooManyVariables(usize),
    #[error("random instances need at least 3 variables, got {0}")]
    TooFewVariables(usize),
    #[error("coloring covers {got} variables, instance has {expected}")]
    ColoringLength { expected: usize, got: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: clause before the \"p nae3sat\" header")]
    MissingHeader { line: usize },
    #[error("line {line}: malformed header, expected \"p nae3sat <variables> <clauses>\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: duplicate header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: invalid token {token:?}")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: expected 3 variables followed by 0, found {found} variables")]
    WrongArity { line: usize, found: usize },
    #[error("line {line}: variable {variable} outside 1..={variable_count}")]
    VariableOutOfRange {
        line: usize,
        variable: usize,
        variable_count: usize,
    },
    #[error("line {line}: variable {variable} repeated within the clause")]
    RepeatedVariable { line: usize, variable: usize },
    #[error("line {line}: more clauses than the {declared} declared in the header")]
    TooManyClauses { line: usize, declared: usize },
    #[error("header declares {declared} clauses, found {found}")]
    TooFewClauses { declared: usize, found: usize },
    #[error("empty input: no \"p nae3sat\" header")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NaeInstance {
    variable_count: usize,
    clauses: Vec<Clause>,
}

impl NaeInstance {
    pub fn new(variable_count: usize, clauses: Vec<Clause>) -> Result<Self, NaeError> {
        for (i, c) in clauses.iter().enumerate() {
            for (k, &v) in c.iter().enumerate() {
                if v == 0 || v > variable_count {
                    return Err(NaeError::VariableOutOfRange {
                        clause: i,
                        variable: v,
                        variable_count,
                    });
                }
                if c[..k].contains(&v) {
                    return Err(NaeError::RepeatedVariable { clause: i, variable: v });
                }
            }
        }
        Ok(NaeInstance {
            variable_count,
            clauses,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Clause indices containing `var`, ascending.
    pub fn occurrences(&self, var: usize) -> Vec<usize> {
        (0..self.clauses.len())
            .filter(|&i| self.clauses[i].contains(&var))
            .collect()
    }

    /// The Fano plane as an NAE instance: 7 variables, 7 lines. Not 2-colorable.
    pub fn fano() -> Self {
        NaeInstance::new(
            7,
            vec![
                [1, 2, 3],
                [1, 4, 5],
                [1, 6, 7],
                [2, 4, 6],
                [2, 5, 7],
                [3, 4, 7],
                [3, 5, 6],
            ],
        )
        .expect("fano plane is well formed")
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for NaeInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p nae3sat {} {}", self.variable_count, self.clauses.len())?;
        for [x, y, z] in &self.clauses {
            writeln!(f, "{x} {y} {z} 0")?;
        }
        Ok(())
    }
}

impl FromStr for NaeInstance {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        parse_instance(text)
    }
}

pub fn parse_instance(text: &str) -> Result<NaeInstance, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed == "c" || trimmed.starts_with("c ") || trimmed.starts_with("c\t") {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens[0] == "p" {
            if header.is_some() {
                return Err(ParseError::DuplicateHeader { line });
            }
            let parsed = match tokens.as_slice() {
                ["p", "nae3sat", v, c] => v.parse::<usize>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or(ParseError::MalformedHeader { line })?);
            continue;
        }
        let (variable_count, declared) = header.ok_or(ParseError::MissingHeader { line })?;
        let mut values = Vec::with_capacity(4);
        for tok in &tokens {
            let v = tok.parse::<usize>().map_err(|_| ParseError::InvalidToken {
                line,
                token: tok.to_string(),
            })?;
            values.push(v);
        }
        match values.split_last() {
            Some((0, vars)) if vars.len() == 3 && !vars.contains(&0) => {
                for (k, &v) in vars.iter().enumerate() {
                    if v > variable_count {
                        return Err(ParseError::VariableOutOfRange {
                            line,
                            variable: v,
                            variable_count,
                        });
                    }
                    if vars[..k].contains(&v) {
                        return Err(ParseError::RepeatedVariable { line, variable: v });
                    }
                }
                if clauses.len() == declared {
                    return Err(ParseError::TooManyClauses { line, declared });
                }
                clauses.push([vars[0], vars[1], vars[2]]);
            }
            _ => {
                let found = values.iter().take_while(|&&v| v != 0).count();
                return Err(ParseError::WrongArity { line, found });
            }
        }
    }
    let (variable_count, declared) = header.ok_or(ParseError::Empty)?;
    if clauses.len() != declared {
        return Err(ParseError::TooFewClauses {
            declared,
            found: clauses.len(),
        });
    }
    Ok(NaeInstance {
        variable_count,
        clauses,
    })
}

/// A blue/red color per variable; index 0 is variable 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarColoring(Vec<Color>);

impl VarColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        VarColoring(colors)
    }

    pub fn uniform(variable_count: usize, c: Color) -> Self {
        VarColoring(vec![c; variable_count])
    }

    /// Color of 1-based variable `var`.
    pub fn get(&self, var: usize) -> Color {
        self.0[var - 1]
    }

    pub fn set(&mut self, var: usize, c: Color) {
        self.0[var - 1] = c;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    /// Whitespace-separated `blue`/`red` tokens, one per variable.
    pub fn to_text(&self) -> String {
        let words: Vec<&str> = self.0.iter().map(|c| c.name()).collect();
        format!("{}\n", words.join(" "))
    }

    /// Inverse of [`VarColoring::to_text`]. Also accepts `B`/`R` and skips
    /// `c` comment lines.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut colors = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line == "c" || line.starts_with("c ") {
                continue;
            }
            for tok in line.split_whitespace() {
                colors.push(match tok.to_ascii_lowercase().as_str() {
                    "blue" | "b" => Color::Blue,
                    "red" | "r" => Color::Red,
                    _ => return Err(format!("invalid color token {tok:?}")),
                });
            }
        }
        Ok(VarColoring(colors))
    }
}

fn check_length(inst: &NaeInstance, a: &VarColoring) -> Result<(), NaeError> {
    if a.len() == inst.variable_count {
        Ok(())
    } else {
        Err(NaeError::ColoringLength {
            expected: inst.variable_count,
            got: a.len(),
        })
    }
}

pub fn clause_satisfied(clause: &Clause, a: &VarColoring) -> bool {
    let first = a.get(clause[0]);
    clause[1..].iter().any(|&v| a.get(v) != first)
}

/// True iff every clause sees both colors.
pub fn is_satisfied_by(inst: &NaeInstance, a: &VarColoring) -> Result<bool, NaeError> {
    check_length(inst, a)?;
    Ok(inst.clauses.iter().all(|c| clause_satisfied(c, a)))
}

/// Index of the first monochrome clause, if any.
pub fn first_violated_clause(inst: &NaeInstance, a: &VarColoring) -> Result<Option<usize>, NaeError> {
    check_length(inst, a)?;
    Ok(inst.clauses.iter().position(|c| !clause_satisfied(c, a)))
}

/// Enumerates colorings in lexicographic order (variable 1 most significant,
/// Blue before Red) and returns the first satisfying one.
pub fn solve_brute_force(inst: &NaeInstance) -> Result<Option<VarColoring>, NaeError> {
    let n = inst.variable_count;
    if n > BRUTE_FORCE_VARIABLE_LIMIT {
        return Err(NaeError::TooManyVariables(n));
    }
    // variable i sits at bit n - i, so numeric order is lexicographic order
    let bit = |v: usize| 1u64 << (n - v);
    let masks: Vec<u64> = inst
        .clauses
        .iter()
        .map(|c| c.iter().map(|&v| bit(v)).fold(0, |acc, b| acc | b))
        .collect();
    let found = (0u64..1 << n).find(|&red| {
        masks.iter().all(|&m| {
            let hit = red & m;
            hit != 0 && hit != m
        })
    });
    Ok(found.map(|red| {
        VarColoring(
            (1..=n)
                .map(|v| if red & bit(v) != 0 { Color::Red } else { Color::Blue })
                .collect(),
        )
    }))
}

/// `clause_count` clauses, each a uniformly random 3-subset of the variables
/// in random order. Deterministic in `seed`.
pub fn generate_random_instance(
    variable_count: usize,
    clause_count: usize,
    seed: u64,
) -> Result<NaeInstance, NaeError> {
    if variable_count < 3 {
        return Err(NaeError::TooFewVariables(variable_count));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..clause_count)
        .map(|_| {
            let idx = sample(&mut rng, variable_count, 3);
            [idx.index(0) + 1, idx.index(1) + 1, idx.index(2) + 1]
        })
        .collect();
    NaeInstance::new(variable_count, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Color::{Blue, Red};

    fn all_colorings(n: usize) -> impl Iterator<Item = VarColoring> {
        (0u32..1 << n).map(move |mask| {
            VarColoring((0..n).map(|i| if mask >> i & 1 == 1 { Red } else { Blue }).collect())
        })
    }

    #[test]
    fn parses_single_clause() {
        let inst = parse_instance("p nae3sat 3 1\n1 2 3 0\n").unwrap();
        assert_eq!(inst.variable_count(), 3);
        assert_eq!(inst.clauses(), &[[1, 2, 3]]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_instance("p nae3sat 3 1\n1 1 2 0\n"),
            Err(ParseError::RepeatedVariable { line: 2, variable: 1 })
        );
        assert_eq!(
            parse_instance("c hi\np nae3sat 3 1\n1 2 4 0\n"),
            Err(ParseError::VariableOutOfRange {
                line: 3,
                variable: 4,
                variable_count: 3
            })
        );
        assert_eq!(
            parse_instance("p nae3sat 3 1\n1 2 0\n"),
            Err(ParseError::WrongArity { line: 2, found: 2 })
        );
        assert_eq!(
            parse_instance("p nae3sat 4 1\n1 2 3 4 0\n"),
            Err(ParseError::WrongArity { line: 2, found: 4 })
        );
        assert_eq!(
            parse_instance("p nae3sat 3 1\n1 2 3\n"),
            Err(ParseError::WrongArity { line: 2, found: 3 })
        );
        assert_eq!(parse_instance("p cnf 3 1\n"), Err(ParseError::MalformedHeader { line: 1 }));
        assert_eq!(parse_instance("p nae3sat x 1\n"), Err(ParseError::MalformedHeader { line: 1 }));
        assert_eq!(parse_instance("1 2 3 0\n"), Err(ParseError::MissingHeader { line: 1 }));
        assert!(matches!(
            parse_instance("p nae3sat 3 1\n1 -2 3 0\n"),
            Err(ParseError::InvalidToken { line: 2, .. })
        ));
        assert_eq!(
            parse_instance("p nae3sat 3 2\n1 2 3 0\n"),
            Err(ParseError::TooFewClauses { declared: 2, found: 1 })
        );
        assert_eq!(
            parse_instance("p nae3sat 3 0\n1 2 3 0\n"),
            Err(ParseError::TooManyClauses { line: 2, declared: 0 })
        );
        assert_eq!(parse_instance("c only\n"), Err(ParseError::Empty));
    }

    #[test]
    fn comments_are_ignored() {
        let text = "c leading\np nae3sat 4 2\nc between\n1 2 3 0\n\nc more\n2 3 4 0\nc trailing\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.clauses(), &[[1, 2, 3], [2, 3, 4]]);
    }

    #[test]
    fn satisfaction_examples() {
        let inst = NaeInstance::new(3, vec![[1, 2, 3]]).unwrap();
        assert!(is_satisfied_by(&inst, &VarColoring::new(vec![Blue, Red, Red])).unwrap());
        assert!(!is_satisfied_by(&inst, &VarColoring::uniform(3, Blue)).unwrap());
        assert!(is_satisfied_by(&inst, &VarColoring::uniform(2, Blue)).is_err());
    }

    #[test]
    fn fano_has_no_nae_coloring() {
        let fano = NaeInstance::fano();
        assert_eq!(all_colorings(7).filter(|a| is_satisfied_by(&fano, a).unwrap()).count(), 0);
        assert_eq!(solve_brute_force(&fano).unwrap(), None);
    }

    #[test]
    fn brute_force_returns_lexicographically_smallest() {
        let inst = NaeInstance::new(3, vec![[1, 2, 3]]).unwrap();
        assert_eq!(
            solve_brute_force(&inst).unwrap(),
            Some(VarColoring::new(vec![Blue, Blue, Red]))
        );
        let empty = NaeInstance::new(4, vec![]).unwrap();
        assert_eq!(solve_brute_force(&empty).unwrap(), Some(VarColoring::uniform(4, Blue)));
        let big = NaeInstance::new(31, vec![]).unwrap();
        assert_eq!(solve_brute_force(&big), Err(NaeError::TooManyVariables(31)));
    }

    #[test]
    fn rejects_repeated_and_out_of_range() {
        assert!(matches!(
            NaeInstance::new(3, vec![[1, 2, 2]]),
            Err(NaeError::RepeatedVariable { clause: 0, variable: 2 })
        ));
        assert!(matches!(
            NaeInstance::new(3, vec![[0, 1, 2]]),
            Err(NaeError::VariableOutOfRange { .. })
        ));
    }

    #[test]
    fn random_instances() {
        let inst = generate_random_instance(3, 1, 99).unwrap();
        let mut c = inst.clauses()[0];
        c.sort_unstable();
        assert_eq!(c, [1, 2, 3]);
        assert_eq!(
            generate_random_instance(10, 20, 5).unwrap(),
            generate_random_instance(10, 20, 5).unwrap()
        );
        let fano_sized = generate_random_instance(7, 7, 1).unwrap();
        assert_eq!(parse_instance(&fano_sized.to_text()).unwrap(), fano_sized);
        assert_eq!(generate_random_instance(2, 1, 0), Err(NaeError::TooFewVariables(2)));
    }

    #[test]
    fn coloring_text_round_trip() {
        let a = VarColoring::new(vec![Blue, Red, Red, Blue]);
        assert_eq!(a.to_text(), "blue red red blue\n");
        assert_eq!(VarColoring::parse(&a.to_text()).unwrap(), a);
        assert_eq!(VarColoring::parse("c x\nB r\n").unwrap(), VarColoring::new(vec![Blue, Red]));
        assert!(VarColoring::parse("green").is_err());
    }

    proptest! {
        #[test]
        fn brute_force_agrees_with_enumeration(vars in 3usize..=10, clauses in 0usize..12, seed: u64) {
            let inst = generate_random_instance(vars, clauses, seed).unwrap();
            let any = all_colorings(vars).any(|a| is_satisfied_by(&inst, &a).unwrap());
            let model = solve_brute_force(&inst).unwrap();
            prop_assert_eq!(any, model.is_some());
            if let Some(a) = model {
                prop_assert!(is_satisfied_by(&inst, &a).unwrap());
            }
        }

        #[test]
        fn six_clauses_always_satisfiable(vars in 3usize..=12, clauses in 0usize..=6, seed: u64) {
            let inst = generate_random_instance(vars, clauses, seed).unwrap();
            prop_assert!(solve_brute_force(&inst).unwrap().is_some());
        }

        #[test]
        fn text_round_trip(vars in 3usize..=15, clauses in 0usize..20, seed: u64) {
            let inst = generate_random_instance(vars, clauses, seed).unwrap();
            prop_assert_eq!(parse_instance(&inst.to_text()).unwrap(), inst);
        }
    }
}

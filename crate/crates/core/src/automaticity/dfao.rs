//! Deterministic finite automata with output, extracted from a finite
//! semigroup orbit. States carry the window vectors that produced them;
//! the output of a state is the first vector component.

use serde::{Deserialize, Serialize};

use crate::algebra::{rat_parse, rat_to_string, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    q: u32,
    initial: usize,
    /// `transitions[state][digit]`
    transitions: Vec<Vec<usize>>,
    outputs: Vec<Rat>,
    /// Window vectors of the orbit construction; absent on automata loaded
    /// from JSON.
    state_vectors: Option<Vec<Vec<Rat>>>,
}

impl Dfao {
    pub fn new(
        q: u32,
        initial: usize,
        transitions: Vec<Vec<usize>>,
        outputs: Vec<Rat>,
        state_vectors: Option<Vec<Vec<Rat>>>,
    ) -> Self {
        assert_eq!(transitions.len(), outputs.len());
        assert!(transitions.iter().all(|t| t.len() == q as usize));
        Dfao {
            q,
            initial,
            transitions,
            outputs,
            state_vectors,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn output(&self, state: usize) -> &Rat {
        &self.outputs[state]
    }

    pub fn outputs(&self) -> &[Rat] {
        &self.outputs
    }

    pub fn transition(&self, state: usize, digit: u32) -> usize {
        self.transitions[state][digit as usize]
    }

    pub fn state_vectors(&self) -> Option<&Vec<Vec<Rat>>> {
        self.state_vectors.as_ref()
    }

    /// Run the base-q digits of `n` most-significant-first from the initial
    /// state; `n = 0` is the empty word.
    pub fn eval(&self, n: u64) -> Rat {
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            digits.push((m % self.q as u64) as u32);
            m /= self.q as u64;
        }
        let mut state = self.initial;
        for &d in digits.iter().rev() {
            state = self.transitions[state][d as usize];
        }
        self.outputs[state].clone()
    }

    /// Leading-zero stability: digit 0 fixes the initial state.
    pub fn leading_zero_stable(&self) -> bool {
        self.transitions[self.initial][0] == self.initial
    }

    pub fn to_json(&self) -> JsonDfao {
        JsonDfao {
            q: self.q,
            initial: self.initial,
            states: self
                .outputs
                .iter()
                .map(|o| JsonState {
                    output: rat_to_string(o),
                })
                .collect(),
            transitions: self.transitions.clone(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serialization cannot fail")
    }

    /// Parse the JSON form; lines starting with `#` are skipped so files
    /// carrying an invocation header load unchanged.
    pub fn from_json_str(text: &str) -> Result<Dfao> {
        let body: String = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n");
        let json: JsonDfao =
            serde_json::from_str(&body).map_err(|e| Error::Json(e.to_string()))?;
        json.into_dfao()
    }

    /// Graphviz form: one node per state labeled `s<i>/<output>`, one edge
    /// per (state, digit), in deterministic order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfao {\n  rankdir=LR;\n");
        out.push_str(&format!("  start [shape=point];\n  start -> s{};\n", self.initial));
        for (i, o) in self.outputs.iter().enumerate() {
            out.push_str(&format!(
                "  s{i} [shape=circle, label=\"s{i}/{}\"];\n",
                rat_to_string(o)
            ));
        }
        for (i, row) in self.transitions.iter().enumerate() {
            for (d, t) in row.iter().enumerate() {
                out.push_str(&format!("  s{i} -> s{t} [label=\"{d}\"];\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    /// Number of distinct output values.
    pub fn distinct_outputs(&self) -> usize {
        let mut seen: Vec<&Rat> = Vec::new();
        for o in &self.outputs {
            if !seen.contains(&o) {
                seen.push(o);
            }
        }
        seen.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonDfao {
    pub q: u32,
    pub initial: usize,
    pub states: Vec<JsonState>,
    pub transitions: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonState {
    pub output: String,
}

impl JsonDfao {
    pub fn into_dfao(self) -> Result<Dfao> {
        if self.q < 2 {
            return Err(Error::Json(format!("q must be >= 2, got {}", self.q)));
        }
        let n = self.states.len();
        if self.transitions.len() != n || self.initial >= n.max(1) {
            return Err(Error::Json("inconsistent state counts".into()));
        }
        let outputs = self
            .states
            .iter()
            .map(|s| rat_parse(&s.output))
            .collect::<Result<Vec<_>>>()?;
        for row in &self.transitions {
            if row.len() != self.q as usize || row.iter().any(|&t| t >= n) {
                return Err(Error::Json("transition table out of range".into()));
            }
        }
        Ok(Dfao::new(self.q, self.initial, self.transitions, outputs, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_from_i64;

    fn thue_morse() -> Dfao {
        Dfao::new(
            2,
            0,
            vec![vec![0, 1], vec![1, 0]],
            vec![rat_from_i64(1), rat_from_i64(-1)],
            None,
        )
    }

    #[test]
    fn eval_thue_morse() {
        let d = thue_morse();
        assert_eq!(d.eval(0), rat_from_i64(1));
        assert_eq!(d.eval(5), rat_from_i64(1)); // binary 101
        let expected = [1i64, -1, -1, 1, -1, 1, 1, -1];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(d.eval(n as u64), rat_from_i64(e));
        }
    }

    #[test]
    fn json_round_trip() {
        let d = thue_morse();
        let text = d.to_json_string();
        let back = Dfao::from_json_str(&text).unwrap();
        for n in 0..256 {
            assert_eq!(d.eval(n), back.eval(n));
        }
    }

    #[test]
    fn json_header_line_skipped() {
        let d = thue_morse();
        let text = format!("# tool vX.Y invocation\n{}", d.to_json_string());
        assert!(Dfao::from_json_str(&text).is_ok());
    }

    #[test]
    fn dot_shape() {
        let dot = thue_morse().to_dot();
        assert!(dot.contains("s0 [shape=circle, label=\"s0/1\"]"));
        assert!(dot.contains("s1 -> s0 [label=\"1\"]"));
    }
}

//! Deterministic report assembly: named data values, named checks sorted
//! into a stable order, and byte-stable renderers. No timestamps and no
//! floating point anywhere, so identical (input, seed, version) triples give
//! identical bytes.

use sha2::{Digest, Sha256};
use std::fmt::Write as _;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// The mathematical statement this check certifies.
    pub reference: String,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub input_digest: String,
    pub seed: Option<u64>,
    pub data: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

pub fn digest_hex(bytes: &[u8]) -> String {
    let out = Sha256::digest(bytes);
    out.iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn new(command: &'static str, input_digest: String) -> Self {
        Report {
            command,
            input_digest,
            seed: None,
            data: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn datum(&mut self, name: &str, value: impl std::fmt::Display) {
        self.data.push((name.to_string(), value.to_string()));
    }

    pub fn check(
        &mut self,
        name: &str,
        reference: &str,
        pass: bool,
        witness: impl std::fmt::Display,
    ) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            reference: reference.to_string(),
            witness: witness.to_string(),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn sorted_checks(&self) -> Vec<&Check> {
        let mut cs: Vec<&Check> = self.checks.iter().collect();
        cs.sort_by(|a, b| a.name.cmp(&b.name));
        cs
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => self.render_structured(),
            Format::Human => self.render_human(),
        }
    }

    fn render_structured(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "version = {VERSION}");
        let _ = writeln!(s, "command = {}", self.command);
        let _ = writeln!(s, "input-sha256 = {}", self.input_digest);
        match self.seed {
            Some(seed) => {
                let _ = writeln!(s, "seed = {seed}");
            }
            None => {
                let _ = writeln!(s, "seed = -");
            }
        }
        for (k, v) in &self.data {
            let _ = writeln!(s, "data {k} = {v}");
        }
        for c in self.sorted_checks() {
            let _ = writeln!(s, "check {} {{", c.name);
            let _ = writeln!(s, "  status = {}", if c.pass { "pass" } else { "fail" });
            let _ = writeln!(s, "  reference = {}", c.reference);
            let _ = writeln!(s, "  witness = {}", c.witness);
            let _ = writeln!(s, "}}");
        }
        let _ = writeln!(
            s,
            "result = {}",
            if self.all_pass() { "pass" } else { "fail" }
        );
        s
    }

    fn render_human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "== {} report (v{VERSION}) ==", self.command);
        let _ = writeln!(s, "input sha256: {}", self.input_digest);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        if !self.data.is_empty() {
            let _ = writeln!(s);
            for (k, v) in &self.data {
                let _ = writeln!(s, "{k}: {v}");
            }
        }
        let _ = writeln!(s);
        let checks = self.sorted_checks();
        for c in &checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "[{tag}] {} -- {}", c.name, c.reference);
            if !c.witness.is_empty() {
                let _ = writeln!(s, "       {}", c.witness);
            }
        }
        let passed = checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(s, "\nsummary: {passed}/{} checks passed", checks.len());
        s
    }
}

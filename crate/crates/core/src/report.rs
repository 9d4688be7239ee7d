//! Game reports: empirical success rates with an optional bound check.

use std::time::Duration;

use crate::record::Record;
use crate::stats;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundKind {
    /// Rate must reach the bound up to 3σ.
    AtLeast,
    /// Rate must sit within 3σ of the value.
    Near,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub name: String,
    pub kind: BoundKind,
    pub value: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameReport {
    pub game: String,
    pub params: Vec<(String, String)>,
    pub trials: u64,
    pub wins: u64,
    /// Oracle or interaction counts summed over all trials.
    pub queries: Vec<(String, u64)>,
    pub elapsed: Duration,
    pub bound: Option<BoundCheck>,
}

impl GameReport {
    pub fn new(game: impl Into<String>) -> Self {
        Self {
            game: game.into(),
            params: Vec::new(),
            trials: 0,
            wins: 0,
            queries: Vec::new(),
            elapsed: Duration::ZERO,
            bound: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn record_trial(&mut self, won: bool) {
        self.trials += 1;
        self.wins += won as u64;
    }

    pub fn add_queries(&mut self, name: &str, n: u64) {
        match self.queries.iter_mut().find(|(k, _)| k == name) {
            Some((_, total)) => *total += n,
            None => self.queries.push((name.to_string(), n)),
        }
    }

    pub fn query_count(&self, name: &str) -> u64 {
        self.queries.iter().find(|(k, _)| k == name).map_or(0, |(_, n)| *n)
    }

    pub fn advantage(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.wins as f64 / self.trials as f64
        }
    }

    pub fn check_at_least(&mut self, name: &str, value: f64) -> bool {
        let pass = stats::at_least_3sigma(self.wins, self.trials, value);
        self.bound = Some(BoundCheck { name: name.into(), kind: BoundKind::AtLeast, value, pass });
        pass
    }

    pub fn check_near(&mut self, name: &str, value: f64) -> bool {
        let pass = stats::within_3sigma(self.wins, self.trials, value);
        self.bound = Some(BoundCheck { name: name.into(), kind: BoundKind::Near, value, pass });
        pass
    }

    pub fn passed(&self) -> Option<bool> {
        self.bound.as_ref().map(|b| b.pass)
    }

    pub fn to_record(&self) -> Record {
        let mut rec = Record::new();
        rec.push("game", self.game.as_str());
        for (k, v) in &self.params {
            rec.push(&format!("param.{k}"), v.as_str());
        }
        rec.push("trials", self.trials.to_string());
        rec.push("wins", self.wins.to_string());
        rec.push("advantage", format!("{:.6}", self.advantage()));
        for (k, n) in &self.queries {
            rec.push(&format!("queries.{k}"), n.to_string());
        }
        rec.push("elapsed_ms", self.elapsed.as_millis().to_string());
        if let Some(b) = &self.bound {
            let rel = match b.kind {
                BoundKind::AtLeast => ">=",
                BoundKind::Near => "~=",
            };
            rec.push("bound", format!("{} {rel} {:.6}", b.name, b.value));
            rec.push("result", if b.pass { "pass" } else { "fail" });
        }
        rec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_fields() {
        let mut r = GameReport::new("demo").param("p", 11);
        for i in 0..10 {
            r.record_trial(i % 2 == 0);
        }
        r.add_queries("sign", 3);
        r.add_queries("sign", 4);
        assert_eq!(r.query_count("sign"), 7);
        assert!(r.check_near("half", 0.5));
        let text = r.to_record().to_string();
        assert!(text.contains("wins 5"));
        assert!(text.contains("advantage 0.500000"));
        assert!(text.contains("result pass"));
    }
}

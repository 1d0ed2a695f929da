use serde::Serialize;

/// One named check inside a [`ValidationOutcome`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub max_deviation: f64,
    pub pass: bool,
}

/// Per-invariant maximum deviations plus an overall verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationOutcome {
    pub tolerance: f64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl ValidationOutcome {
    pub(crate) fn from_deviations(tolerance: f64, deviations: Vec<(&'static str, f64)>) -> Self {
        let checks: Vec<Check> = deviations
            .into_iter()
            .map(|(name, max_deviation)| Check {
                name,
                max_deviation,
                // NaN must fail
                pass: max_deviation <= tolerance,
            })
            .collect();
        let pass = checks.iter().all(|c| c.pass);
        Self { tolerance, checks, pass }
    }

    pub fn deviation(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.max_deviation)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

use std::fmt;

/// What a validation finding points at.
#[derive(Clone, Debug, PartialEq)]
pub enum Subject {
    Vertex(usize),
    Edge(usize),
    Face(usize),
    /// A crease and a face interacting with it.
    EdgeFace(usize, usize),
    /// A crease and another crease or boundary edge.
    EdgeEdge(usize, usize),
    /// Two named regions of a thickened pattern or solid model.
    Regions(String, String),
    Pattern,
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Vertex(v) => write!(f, "vertex {v}"),
            Subject::Edge(e) => write!(f, "edge {e}"),
            Subject::Face(i) => write!(f, "face {i}"),
            Subject::EdgeFace(e, i) => write!(f, "crease {e} / face {i}"),
            Subject::EdgeEdge(e, o) => write!(f, "crease {e} / edge {o}"),
            Subject::Regions(a, b) => write!(f, "{a} / {b}"),
            Subject::Pattern => write!(f, "pattern"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Finding {
    pub subject: Subject,
    pub reason: String,
}

/// Outcome of one named check. Passes iff there are no findings.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub check: &'static str,
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn new(check: &'static str) -> Self {
        ValidationReport {
            check,
            findings: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn fail(&mut self, subject: Subject, reason: impl Into<String>) {
        self.findings.push(Finding {
            subject,
            reason: reason.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{:<20} {}", self.check, status)?;
        for finding in &self.findings {
            writeln!(f, "    {}: {}", finding.subject, finding.reason)?;
        }
        Ok(())
    }
}

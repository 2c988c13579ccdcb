use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use posetop::complex::SimplicialComplex;
use posetop::cylinder::Status;
use posetop::homology::HomologyComparison;
use posetop::{ElementSet, Error, Poset, ReductionCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportStatus {
    Certified,
    Refuted,
    Unknown,
    Error,
}

impl From<Status> for ReportStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Certified => ReportStatus::Certified,
            Status::Refuted => ReportStatus::Refuted,
            Status::Unknown => ReportStatus::Unknown,
        }
    }
}

impl ReportStatus {
    pub fn exit_code(self, error: Option<&Failure>) -> i32 {
        match self {
            ReportStatus::Certified => 0,
            ReportStatus::Refuted => 1,
            ReportStatus::Unknown => 2,
            ReportStatus::Error => match error {
                Some(f) if f.input => 3,
                _ => 4,
            },
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ReportStatus::Certified => "certified",
            ReportStatus::Refuted => "refuted",
            ReportStatus::Unknown => "unknown",
            ReportStatus::Error => "error",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub input: bool,
    pub message: String,
}

impl From<&Error> for Failure {
    fn from(e: &Error) -> Self {
        Failure {
            input: e.is_input_error(),
            message: e.to_string(),
        }
    }
}

/// Where a certificate starts and where it must end.
pub enum Attachment {
    Poset {
        poset: Poset,
        start: ElementSet,
        end: ElementSet,
    },
    Complex {
        complex: SimplicialComplex,
        end: Vec<Vec<String>>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateRecord {
    pub name: String,
    pub steps: usize,
    pub replayed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay_error: Option<String>,
    pub certificate: ReductionCertificate,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputHash>,
    pub status: ReportStatus,
    pub certificates: Vec<CertificateRecord>,
    pub homology: Vec<HomologyComparison>,
    pub result: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Failure>,
    pub timing_ms: u128,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub dot: Option<String>,
    #[serde(skip)]
    pending: Vec<(String, Attachment, ReductionCertificate)>,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            inputs: Vec::new(),
            status: ReportStatus::Certified,
            certificates: Vec::new(),
            homology: Vec::new(),
            result: serde_json::Value::Null,
            error: None,
            timing_ms: 0,
            text: String::new(),
            dot: None,
            pending: Vec::new(),
            started: Some(Instant::now()),
        }
    }

    /// Reads a file and records its hash.
    pub fn read(&mut self, path: &Path) -> Result<String, Error> {
        let bytes = std::fs::read(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push(InputHash {
            path: path.display().to_string(),
            sha256: format!("{:x}", Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes)
            .map_err(|_| Error::Invalid(format!("{} is not UTF-8", path.display())))
    }

    pub fn attach(&mut self, name: impl Into<String>, at: Attachment, cert: ReductionCertificate) {
        self.pending.push((name.into(), at, cert));
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn set_result<T: Serialize>(&mut self, value: &T) {
        self.result = serde_json::to_value(value).expect("report payloads serialize");
    }

    pub fn fail(&mut self, e: &Error) {
        self.status = ReportStatus::Error;
        self.error = Some(Failure::from(e));
        self.line(format!("error: {e}"));
    }

    /// Replays every attached certificate. A report stays `Certified` only if
    /// all of them end where they should.
    pub fn finalize(mut self) -> Self {
        for (name, at, cert) in std::mem::take(&mut self.pending) {
            let outcome = match &at {
                Attachment::Poset { poset, start, end } => match cert.replay(poset, start) {
                    Ok(got) if &got == end => Ok(()),
                    Ok(got) => Err(format!(
                        "ends at {:?} instead of {:?}",
                        poset.names(&got),
                        poset.names(end)
                    )),
                    Err(e) => Err(e.to_string()),
                },
                Attachment::Complex { complex, end } => match cert.replay_complex(complex) {
                    Ok(got) if &got.canonical_form() == end => Ok(()),
                    Ok(_) => Err("ends at the wrong subcomplex".into()),
                    Err(e) => Err(e.to_string()),
                },
            };
            if let Err(reason) = &outcome {
                self.status = ReportStatus::Error;
                if self.error.is_none() {
                    self.error = Some(Failure {
                        input: false,
                        message: format!("certificate `{name}` does not replay: {reason}"),
                    });
                }
            }
            self.certificates.push(CertificateRecord {
                name,
                steps: cert.len(),
                replayed: outcome.is_ok(),
                replay_error: outcome.err(),
                certificate: cert,
            });
        }
        if let Some(t) = self.started.take() {
            self.timing_ms = t.elapsed().as_millis();
        }
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code(self.error.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use posetop::reduction::ReductionStep;

    #[test]
    fn a_certificate_that_does_not_replay_is_an_internal_error() {
        let p = Poset::chain(["a", "b", "c"]).unwrap();
        // `b` has a unique cover, but it is `c`, not `a`
        let cert = ReductionCertificate::new(vec![ReductionStep::UpBeat {
            element: "b".into(),
            witness: "a".into(),
        }]);
        let mut report = RunReport::new("test");
        report.attach(
            "bogus",
            Attachment::Poset {
                poset: p.clone(),
                start: p.full_set(),
                end: p.element_set(["a", "c"]).unwrap(),
            },
            cert,
        );
        let report = report.finalize();
        assert_eq!(report.status, ReportStatus::Error);
        assert_eq!(report.exit_code(), 4);
        assert!(!report.certificates[0].replayed);
    }

    #[test]
    fn a_replaying_certificate_keeps_the_status() {
        let p = Poset::chain(["a", "b"]).unwrap();
        let cert = ReductionCertificate::new(vec![ReductionStep::UpBeat {
            element: "a".into(),
            witness: "b".into(),
        }]);
        let mut report = RunReport::new("test");
        report.status = ReportStatus::Refuted;
        report.attach(
            "ok",
            Attachment::Poset {
                poset: p.clone(),
                start: p.full_set(),
                end: p.element_set(["b"]).unwrap(),
            },
            cert,
        );
        let report = report.finalize();
        assert_eq!(report.exit_code(), 1);
        assert!(report.certificates[0].replayed);
    }
}

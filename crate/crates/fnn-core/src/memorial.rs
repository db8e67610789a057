//! Append-only persistence of race records and decision feedback.
//!
//! The store is a UTF-8 file with one self-contained JSON record per line.
//! Every record snapshots the full pool, the deadline and the outcome, so a
//! race can be replayed bit-identically from the file alone. Records are
//! never mutated or deleted; ids are assigned monotonically from 1.
//!
//! Single-writer, multi-reader: appends go through one `Memorial` value,
//! reads re-open the file and observe a prefix of the appends. Unknown JSON
//! fields on a record line survive a load/serialize round trip.

use crate::consensus::{self, ConsensusError, ExpertNetwork};
use crate::neuron::{CoreKind, MirrorNeuron, NodeId};
use crate::race::{self, Deadline, RaceOutcome, RacePool};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Version tag written into every record line.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum MemorialError {
    #[error("store i/o failure: {0}")]
    Storage(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Decode { line: usize, message: String },
    #[error("record id {got} breaks monotonic assignment (expected {expected})")]
    NonMonotonicId { expected: u64, got: u64 },
    #[error("invalid record: {0}")]
    InvalidRecord(String),
    #[error("no records of request type \"{0}\"")]
    NoRecords(String),
    #[error(transparent)]
    Consensus(#[from] ConsensusError),
}

/// One persisted race plus optional decision feedback.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RaceRecord {
    pub version: u32,
    pub id: u64,
    pub timestamp: String,
    pub request_type: String,
    pub pool: RacePool,
    pub deadline: Deadline,
    pub outcome: RaceOutcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub user_decision: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correct_label: Option<u8>,
    /// Fields from newer writers; kept verbatim so a rewrite preserves them.
    #[serde(flatten)]
    pub extra: serde_json::Map<String, Value>,
}

impl RaceRecord {
    /// Structural consistency checks run on append and on load.
    pub fn validate(&self) -> Result<(), MemorialError> {
        if self.version != SCHEMA_VERSION {
            return Err(MemorialError::InvalidRecord(format!(
                "unsupported schema version {} (expected {})",
                self.version, SCHEMA_VERSION
            )));
        }
        if self.id == 0 {
            return Err(MemorialError::InvalidRecord("record id must be at least 1".into()));
        }
        self.deadline
            .validate()
            .map_err(|e| MemorialError::InvalidRecord(e.to_string()))?;
        if self.outcome.deadline != self.deadline {
            return Err(MemorialError::InvalidRecord(
                "outcome deadline differs from record deadline".into(),
            ));
        }
        if self.outcome.nodes.len() != self.pool.len() {
            return Err(MemorialError::InvalidRecord(format!(
                "outcome holds {} node states for a pool of {}",
                self.outcome.nodes.len(),
                self.pool.len()
            )));
        }
        for state in &self.outcome.nodes {
            let consistent = (0.0..1.0).contains(&state.response_motor)
                && (0.0..1.0).contains(&state.response_sensory)
                && (state.confidence_motor - (1.0 - state.response_motor) * 100.0).abs() < 1e-9
                && (state.confidence_sensory - (1.0 - state.response_sensory) * 100.0).abs() < 1e-9;
            if !consistent {
                return Err(MemorialError::InvalidRecord(format!(
                    "node {} carries an inconsistent state",
                    state.id
                )));
            }
        }
        for label in [self.user_decision, self.correct_label].into_iter().flatten() {
            if label > 1 {
                return Err(MemorialError::InvalidRecord(format!(
                    "decision labels must be 0 or 1 (got {label})"
                )));
            }
        }
        Ok(())
    }
}

/// Aggregate view over the whole store.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemorialStats {
    pub record_count: u64,
    /// Records per request type, sorted by type.
    pub per_type: BTreeMap<String, u64>,
    /// Mean decision loss over records with a correct label, using the group
    /// motor response as the prediction; absent without labeled records.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_loss: Option<f64>,
}

/// Handle to one memorial file. Opening scans the file once to recover the
/// id counter; a missing file counts as an empty store.
#[derive(Debug)]
pub struct Memorial {
    path: PathBuf,
    next_id: u64,
}

impl Memorial {
    pub fn open(path: impl Into<PathBuf>) -> Result<Self, MemorialError> {
        let path = path.into();
        let mut last_id = 0u64;
        if path.exists() {
            for line in BufReader::new(File::open(&path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                if let Ok(record) = serde_json::from_str::<RaceRecord>(&line) {
                    last_id = last_id.max(record.id);
                }
            }
        }
        Ok(Self { path, next_id: last_id + 1 })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Id the next appended record must carry.
    pub fn next_id(&self) -> u64 {
        self.next_id
    }

    /// Validate and durably append one record; returns its id.
    ///
    /// The record must carry `next_id()`; anything else breaks the unique,
    /// monotone id invariant and is rejected without touching the file.
    pub fn append_record(&mut self, record: &RaceRecord) -> Result<u64, MemorialError> {
        record.validate()?;
        if record.id != self.next_id {
            return Err(MemorialError::NonMonotonicId { expected: self.next_id, got: record.id });
        }
        let mut line = serde_json::to_string(record)
            .map_err(|e| MemorialError::InvalidRecord(e.to_string()))?;
        line.push('\n');
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.write_all(line.as_bytes())?;
        file.sync_data()?;
        self.next_id += 1;
        Ok(record.id)
    }

    /// All records in append order, optionally restricted to one request
    /// type. A corrupt or inconsistent line fails with its line number.
    pub fn load_records(&self, request_type: Option<&str>) -> Result<Vec<RaceRecord>, MemorialError> {
        let mut records = Vec::new();
        if !self.path.exists() {
            return Ok(records);
        }
        for (index, line) in BufReader::new(File::open(&self.path)?).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let record: RaceRecord = serde_json::from_str(&line)
                .map_err(|e| MemorialError::Decode { line: index + 1, message: e.to_string() })?;
            record
                .validate()
                .map_err(|e| MemorialError::Decode { line: index + 1, message: e.to_string() })?;
            if request_type.is_none_or(|t| record.request_type == t) {
                records.push(record);
            }
        }
        Ok(records)
    }

    /// Expert network over the distinct neurons seen in records of one
    /// request type, taking the latest snapshot per node id.
    pub fn expert_set(
        &self,
        request_type: &str,
        deadline: &Deadline,
        core: CoreKind,
        m: usize,
    ) -> Result<ExpertNetwork, MemorialError> {
        let records = self.load_records(Some(request_type))?;
        if records.is_empty() {
            return Err(MemorialError::NoRecords(request_type.to_owned()));
        }
        let mut latest: BTreeMap<NodeId, MirrorNeuron> = BTreeMap::new();
        for record in &records {
            for node in record.pool.nodes() {
                latest.insert(node.id.clone(), node.clone());
            }
        }
        let pool = RacePool::new(latest.into_values().collect(), 0)
            .map_err(|e| MemorialError::InvalidRecord(e.to_string()))?;
        Ok(consensus::net_compete(&pool, deadline, core, m)?)
    }

    /// Record counts and the mean decision loss over labeled records.
    pub fn stats(&self) -> Result<MemorialStats, MemorialError> {
        let records = self.load_records(None)?;
        let mut per_type: BTreeMap<String, u64> = BTreeMap::new();
        let mut loss_sum = 0.0;
        let mut labeled = 0u64;
        for record in &records {
            *per_type.entry(record.request_type.clone()).or_default() += 1;
            if let Some(label) = record.correct_label {
                let loss = race::decision_loss(record.outcome.group_motor.group_response, label)
                    .map_err(|e| MemorialError::InvalidRecord(e.to_string()))?;
                loss_sum += loss;
                labeled += 1;
            }
        }
        Ok(MemorialStats {
            record_count: records.len() as u64,
            per_type,
            mean_loss: (labeled > 0).then(|| loss_sum / labeled as f64),
        })
    }
}

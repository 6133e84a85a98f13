//! `{"communities": [[label, ...], ...]}` partition files.

use std::collections::HashMap;

use nmc_core::{Communities, Graph};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Label {
    Text(String),
    Number(serde_json::Number),
}

impl Label {
    fn into_string(self) -> String {
        match self {
            Label::Text(s) => s,
            Label::Number(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Deserialize)]
struct PartitionFile {
    communities: Vec<Vec<Label>>,
}

#[derive(Debug, Serialize)]
struct PartitionOut<'a> {
    communities: &'a [Vec<String>],
}

/// Parses a partition file against `g`, reporting every unknown, missing
/// and duplicated node at once.
pub fn parse_partition(text: &str, g: &Graph) -> Result<Communities, CliError> {
    let file: PartitionFile =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed partition file: {e}")))?;
    let index = g.label_index();
    let mut groups = Vec::with_capacity(file.communities.len());
    let mut unknown = Vec::new();
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for community in file.communities {
        if community.is_empty() {
            return Err(CliError::Input("partition file contains an empty community".into()));
        }
        let mut members = Vec::with_capacity(community.len());
        for label in community {
            let label = label.into_string();
            match index.get(label.as_str()) {
                Some(&v) => {
                    *seen.entry(v).or_default() += 1;
                    members.push(v);
                }
                None => unknown.push(label),
            }
        }
        groups.push(members);
    }
    let mut duplicate: Vec<&str> = Vec::new();
    let mut missing: Vec<&str> = Vec::new();
    for v in 0..g.n() {
        match seen.get(&v).copied().unwrap_or(0) {
            0 => missing.push(g.label(v)),
            1 => {}
            _ => duplicate.push(g.label(v)),
        }
    }
    if !(unknown.is_empty() && duplicate.is_empty() && missing.is_empty()) {
        let mut msg = String::from("partition does not cover the graph exactly once");
        for (what, list) in [("unknown", unknown.iter().map(String::as_str).collect::<Vec<_>>()), ("duplicate", duplicate), ("missing", missing)] {
            if !list.is_empty() {
                msg.push_str(&format!("; {what} nodes: {}", list.join(", ")));
            }
        }
        return Err(CliError::Input(msg));
    }
    Communities::from_groups(g.n(), &groups).map_err(|e| CliError::Input(e.to_string()))
}

/// Member labels of each community.
pub fn labelled_groups(g: &Graph, parts: &Communities) -> Vec<Vec<String>> {
    parts.members().into_iter().map(|m| m.into_iter().map(|v| g.label(v).to_owned()).collect()).collect()
}

pub fn partition_json(groups: &[Vec<String>]) -> String {
    serde_json::to_string_pretty(&PartitionOut { communities: groups }).expect("partition serializes")
}

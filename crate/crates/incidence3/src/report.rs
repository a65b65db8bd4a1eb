//! Flat key-value reports with the three output encodings used by the CLI:
//! sorted `key=value` text, CSV (one header row + one value row) and JSON
//! with sorted keys.

use std::collections::BTreeMap;

/// An ordered set of (key, value) entries; keys are unique.
#[derive(Debug, Clone, Default)]
pub struct Report {
    entries: BTreeMap<String, String>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn set<K: Into<String>, V: ToString>(&mut self, key: K, value: V) {
        self.entries.insert(key.into(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }

    pub fn merge_prefixed(&mut self, prefix: &str, other: &Report) {
        for (k, v) in &other.entries {
            self.entries.insert(format!("{prefix}.{k}"), v.clone());
        }
    }

    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push('=');
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let escape = |s: &str| {
            if s.contains(',') || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let header: Vec<String> = self.entries.keys().map(|k| escape(k)).collect();
        let row: Vec<String> = self.entries.values().map(|v| escape(v)).collect();
        format!("{}\n{}\n", header.join(","), row.join(","))
    }

    pub fn to_json(&self) -> String {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        serde_json::to_string_pretty(&serde_json::Value::Object(map)).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_is_sorted_and_stable() {
        let mut r = Report::new();
        r.set("b", 2);
        r.set("a", 1);
        assert_eq!(r.to_kv(), "a=1\nb=2\n");
    }

    #[test]
    fn csv_escapes_commas() {
        let mut r = Report::new();
        r.set("k", "1,2");
        assert_eq!(r.to_csv(), "k\n\"1,2\"\n");
    }

    #[test]
    fn json_keys_sorted() {
        let mut r = Report::new();
        r.set("z", "last");
        r.set("a", "first");
        let j = r.to_json();
        assert!(j.find("\"a\"").unwrap() < j.find("\"z\"").unwrap());
    }
}

use serde::{Deserialize, Serialize};

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

/// Ordered list of checks; passes iff every item passes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checklist {
    pub items: Vec<CheckItem>,
}

impl Checklist {
    pub fn push(&mut self, check: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.items.push(CheckItem { check: check.into(), passed, detail: detail.into() });
        passed
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: Checklist) {
        for mut item in other.items {
            item.check = format!("{prefix}{}", item.check);
            self.items.push(item);
        }
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}

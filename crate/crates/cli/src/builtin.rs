//! Scenarios bundled into the binary.

pub const BUILTINS: [(&str, &str); 5] = [
    ("inoue7", include_str!("../scenarios/inoue7.json")),
    ("beauville8", include_str!("../scenarios/beauville8.json")),
    ("inoue-z24", include_str!("../scenarios/inoue-z24.json")),
    ("fermat-z52", include_str!("../scenarios/fermat-z52.json")),
    ("proofcheck-all", include_str!("../scenarios/proofcheck-all.json")),
];

pub fn lookup(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

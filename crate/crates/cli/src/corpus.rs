//! Specs shipped with the binary.

pub const BUNDLED: [(&str, &str); 4] = [
    ("flat3", include_str!("../specs/flat3.cmspec")),
    ("sphere3", include_str!("../specs/sphere3.cmspec")),
    ("example3d", include_str!("../specs/example3d.cmspec")),
    ("example3d-vector", include_str!("../specs/example3d-vector.cmspec")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfile::parse_spec;

    #[test]
    fn every_bundled_spec_parses() {
        for (name, text) in BUNDLED {
            let spec = parse_spec(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(spec.name, name);
        }
    }
}

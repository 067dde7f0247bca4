use std::sync::{Arc, OnceLock};

use super::{is_isomorphic, parse_group, GroupRef};

/// Fixed small-group catalog used to name isomorphism classes. Order
/// matters: the first isomorphic entry is the canonical representative.
pub const CATALOG: &[&str] = &[
    "C1", "C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "C2xC4", "C2xC2xC2", "D8", "Q8",
    "C9", "C3xC3", "C10", "D10", "C11", "C12", "C2xC6", "D12", "C13", "C14", "D14", "C15", "C16",
    "C2xC8", "C4xC4", "C2xC2xC4", "C2xC2xC2xC2", "D16", "C2xD8", "C2xQ8", "C17", "C18", "C3xC6",
    "D18", "C3xS3", "C19", "C20", "C2xC10", "D20", "C21", "C22", "D22", "C23", "C24", "C2xC12",
    "C2xC2xC6", "S4", "D24", "C2xD12", "C4xS3", "C3xD8", "C3xQ8", "C25", "C5xC5", "C26", "D26",
    "C27", "C3xC9", "C3xC3xC3", "C28", "C2xC14", "D28", "C29", "C30", "D30", "C3xD10", "C5xS3",
    "C31", "C32", "C36", "S3xS3", "C6xC6",
];

fn catalog_groups() -> &'static [GroupRef] {
    static GROUPS: OnceLock<Vec<GroupRef>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        CATALOG
            .iter()
            .map(|s| Arc::new(parse_group(s).expect("catalog spec parses")))
            .collect()
    })
}

/// The first catalog group isomorphic to `g`, if the catalog covers it.
pub fn catalog_representative(g: &GroupRef) -> Option<GroupRef> {
    catalog_groups()
        .iter()
        .filter(|c| c.order() == g.order())
        .find(|c| is_isomorphic(c, g).is_some())
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries_are_pairwise_non_isomorphic() {
        let gs = catalog_groups();
        for i in 0..gs.len() {
            for j in 0..i {
                assert!(is_isomorphic(&gs[i], &gs[j]).is_none(), "{} ~ {}", CATALOG[i], CATALOG[j]);
            }
        }
    }

    #[test]
    fn representative_lookup() {
        let g = Arc::new(parse_group("C3xC2").unwrap());
        assert_eq!(catalog_representative(&g).unwrap().name(), "C6");
        let d4 = Arc::new(parse_group("D4").unwrap());
        assert_eq!(catalog_representative(&d4).unwrap().name(), "V4");
    }
}

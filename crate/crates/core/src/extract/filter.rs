use std::path::Path;

use globset::{Glob, GlobSet, GlobSetBuilder};

use super::{ScanConfig, ScanError};

/// Compiled exclusion rules for a scan.
#[derive(Debug, Clone)]
pub struct PathFilter {
    globs: GlobSet,
    include_tests: bool,
}

impl PathFilter {
    pub fn new(config: &ScanConfig) -> Result<Self, ScanError> {
        let mut builder = GlobSetBuilder::new();
        for pattern in &config.exclude {
            let glob = Glob::new(pattern).map_err(|e| ScanError::InvalidGlob {
                pattern: pattern.clone(),
                message: e.to_string(),
            })?;
            builder.add(glob);
        }
        let globs = builder.build().map_err(|e| ScanError::InvalidGlob {
            pattern: config.exclude.join(", "),
            message: e.to_string(),
        })?;
        Ok(Self {
            globs,
            include_tests: config.include_tests,
        })
    }

    /// Whether a root-relative, slash-separated path is skipped.
    pub fn excludes(&self, rel_path: &str) -> bool {
        self.globs.is_match(rel_path) || (!self.include_tests && looks_like_test(rel_path))
    }

    pub fn matches_glob(&self, rel_path: &str) -> bool {
        self.globs.is_match(rel_path)
    }
}

fn looks_like_test(rel_path: &str) -> bool {
    let path = Path::new(rel_path);
    let in_test_dir = path.parent().is_some_and(|dir| {
        dir.iter().any(|seg| {
            let seg = seg.to_string_lossy();
            seg.eq_ignore_ascii_case("test") || seg.eq_ignore_ascii_case("tests")
        })
    });
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    in_test_dir || ["Test", "Tests", "IT"].iter().any(|s| stem.ends_with(s))
}

/// True when the path sits under a `test`/`tests` directory, its stem ends
/// in `Test`, `Tests` or `IT`, or an exclusion glob of `config` matches.
/// An invalid glob never matches.
pub fn is_test_file(file_path: &Path, config: &ScanConfig) -> bool {
    let rel = file_path
        .iter()
        .map(|c| c.to_string_lossy())
        .collect::<Vec<_>>()
        .join("/");
    if looks_like_test(&rel) {
        return true;
    }
    PathFilter::new(config).is_ok_and(|f| f.matches_glob(&rel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(path: &str) -> bool {
        is_test_file(Path::new(path), &ScanConfig::default())
    }

    #[test]
    fn heuristic_cases() {
        assert!(check("src/test/java/FooTest.java"));
        assert!(!check("src/main/java/Foo.java"));
        assert!(!check("src/main/java/Testament.java"));
        assert!(check("src/main/java/FooTests.java"));
        assert!(check("src/main/java/FooIT.java"));
        assert!(check("module/Tests/Helper.java"));
        assert!(check("module/TEST/Helper.java"));
        assert!(!check("src/main/java/testing/Helper.java"));
    }

    #[test]
    fn globs_extend_the_heuristic() {
        let config = ScanConfig {
            exclude: vec!["**/generated/**".into()],
            ..ScanConfig::default()
        };
        assert!(is_test_file(Path::new("src/generated/Foo.java"), &config));
        assert!(!is_test_file(Path::new("src/main/Foo.java"), &config));
    }

    #[test]
    fn include_tests_keeps_glob_exclusions() {
        let config = ScanConfig {
            exclude: vec!["**/gen/*.java".into()],
            include_tests: true,
            ..ScanConfig::default()
        };
        let filter = PathFilter::new(&config).unwrap();
        assert!(!filter.excludes("src/test/java/FooTest.java"));
        assert!(filter.excludes("a/gen/X.java"));
    }

    #[test]
    fn bad_glob_is_reported() {
        let config = ScanConfig {
            exclude: vec!["a/[".into()],
            ..ScanConfig::default()
        };
        assert!(matches!(
            PathFilter::new(&config),
            Err(ScanError::InvalidGlob { .. })
        ));
    }
}

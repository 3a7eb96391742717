//! Corpus manifests and byte-to-text decoding.
//!
//! A manifest is a TSV file, one corpus per line:
//! `label<TAB>mode<TAB>[encoding<TAB>]path` — the encoding column is
//! optional and defaults to utf8. Blank lines are skipped. Relative paths
//! resolve against the manifest's own directory so manifests stay portable.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::tokenize::Mode;

/// Byte encoding of a corpus file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Encoding {
    #[default]
    Utf8,
    Windows1251,
    Koi8R,
}

impl Encoding {
    pub fn name(self) -> &'static str {
        match self {
            Encoding::Utf8 => "utf8",
            Encoding::Windows1251 => "windows1251",
            Encoding::Koi8R => "koi8r",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "utf8" | "utf-8" => Some(Encoding::Utf8),
            "windows1251" | "windows-1251" | "cp1251" => Some(Encoding::Windows1251),
            "koi8r" | "koi8-r" => Some(Encoding::Koi8R),
            _ => None,
        }
    }

    fn as_encoding_rs(self) -> &'static encoding_rs::Encoding {
        match self {
            Encoding::Utf8 => encoding_rs::UTF_8,
            Encoding::Windows1251 => encoding_rs::WINDOWS_1251,
            Encoding::Koi8R => encoding_rs::KOI8_R,
        }
    }
}

fn parse_mode(s: &str) -> Option<Mode> {
    match s {
        "natural" => Some(Mode::Natural),
        "java" => Some(Mode::Java),
        "cpp" | "c++" => Some(Mode::Cpp),
        _ => None,
    }
}

/// One corpus to analyze: where it lives and how to read it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub label: String,
    pub path: PathBuf,
    pub mode: Mode,
    pub encoding: Encoding,
}

/// Decoded corpus text, tagged with the label it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawText {
    pub content: String,
    pub source_label: String,
}

/// Parse a manifest file into corpus specs, preserving line order.
///
/// Errors on lines with the wrong field count, unknown mode or encoding
/// names, empty labels, and duplicate labels (artifact filenames are
/// derived from labels, so duplicates would silently overwrite output).
pub fn parse_manifest(path: &Path) -> Result<Vec<CorpusSpec>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    let dir = path.parent().unwrap_or_else(|| Path::new(""));
    let mut specs = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let bad = |reason: String| Error::Manifest {
            path: path.to_owned(),
            line: lineno,
            reason,
        };
        let (label, mode_s, enc_s, file) = match fields.as_slice() {
            [label, mode, file] => (*label, *mode, "utf8", *file),
            [label, mode, enc, file] => (*label, *mode, *enc, *file),
            _ => {
                return Err(bad(format!(
                    "expected 3 or 4 tab-separated fields, got {}",
                    fields.len()
                )))
            }
        };
        if label.is_empty() {
            return Err(bad("empty label".into()));
        }
        if !seen.insert(label.to_owned()) {
            return Err(bad(format!("duplicate label {label:?}")));
        }
        let mode =
            parse_mode(mode_s).ok_or_else(|| bad(format!("unknown mode {mode_s:?}")))?;
        let encoding =
            Encoding::parse(enc_s).ok_or_else(|| bad(format!("unknown encoding {enc_s:?}")))?;
        if file.is_empty() {
            return Err(bad("empty path".into()));
        }
        let file_path = Path::new(file);
        let path = if file_path.is_absolute() {
            file_path.to_owned()
        } else {
            dir.join(file_path)
        };
        specs.push(CorpusSpec {
            label: label.to_owned(),
            path,
            mode,
            encoding,
        });
    }
    Ok(specs)
}

/// Read and decode one corpus file.
///
/// Undecodable byte sequences are an error, never silently replaced: a
/// mis-declared encoding would otherwise skew EU counts without a trace.
/// A leading U+FEFF (byte-order mark) is removed.
pub fn load_corpus(spec: &CorpusSpec) -> Result<RawText> {
    let bytes = fs::read(&spec.path).map_err(|source| Error::Io {
        path: spec.path.clone(),
        source,
    })?;
    let decode_error = || Error::Decode {
        path: spec.path.clone(),
        encoding: spec.encoding.name(),
    };
    let decoded = spec
        .encoding
        .as_encoding_rs()
        .decode_without_bom_handling_and_without_replacement(&bytes)
        .ok_or_else(decode_error)?;
    // The WHATWG windows-1251 table papers over the code chart's one
    // undefined byte (0x98) with the C1 control U+0098; a file containing
    // it is mis-declared or corrupt, so keep it an error.
    if spec.encoding == Encoding::Windows1251 && decoded.contains('\u{0098}') {
        return Err(decode_error());
    }
    let content = decoded.strip_prefix('\u{FEFF}').unwrap_or(&decoded);
    Ok(RawText {
        content: content.to_owned(),
        source_label: spec.label.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn spec(path: PathBuf, encoding: Encoding) -> CorpusSpec {
        CorpusSpec {
            label: "t".into(),
            path,
            mode: Mode::Natural,
            encoding,
        }
    }

    fn write_bytes(dir: &Path, name: &str, bytes: &[u8]) -> PathBuf {
        let p = dir.join(name);
        let mut f = fs::File::create(&p).unwrap();
        f.write_all(bytes).unwrap();
        p
    }

    #[test]
    fn windows1251_decodes_per_code_chart() {
        let dir = tempfile::tempdir().unwrap();
        // 0xC8 И, 0xE6 ж, 0x20 space
        let p = write_bytes(dir.path(), "w.txt", &[0xC8, 0x20, 0xE6]);
        let raw = load_corpus(&spec(p, Encoding::Windows1251)).unwrap();
        assert_eq!(raw.content, "И ж");
    }

    #[test]
    fn koi8r_decodes_per_code_chart() {
        let dir = tempfile::tempdir().unwrap();
        // same bytes mean different letters in koi8-r: 0xC8 х, 0xF7 В
        let p = write_bytes(dir.path(), "k.txt", &[0xC8, 0x20, 0xF7]);
        let raw = load_corpus(&spec(p, Encoding::Koi8R)).unwrap();
        assert_eq!(raw.content, "х В");
    }

    #[test]
    fn utf8_bom_is_stripped() {
        let dir = tempfile::tempdir().unwrap();
        let p = write_bytes(dir.path(), "b.txt", b"\xEF\xBB\xBFhello");
        let raw = load_corpus(&spec(p, Encoding::Utf8)).unwrap();
        assert_eq!(raw.content, "hello");
    }

    #[test]
    fn invalid_bytes_error_with_encoding_name() {
        let dir = tempfile::tempdir().unwrap();
        // 0x98 is unassigned in windows-1251
        let p = write_bytes(dir.path(), "bad.txt", &[0x41, 0x98]);
        let err = load_corpus(&spec(p, Encoding::Windows1251)).unwrap_err();
        match err {
            Error::Decode { encoding, .. } => assert_eq!(encoding, "windows1251"),
            other => panic!("expected decode error, got {other:?}"),
        }
        assert_eq!(err.exit_code(), 2);

        let dir2 = tempfile::tempdir().unwrap();
        let p2 = write_bytes(dir2.path(), "bad8.txt", &[0xFF, 0xFE, 0x41]);
        assert!(matches!(
            load_corpus(&spec(p2, Encoding::Utf8)),
            Err(Error::Decode { .. })
        ));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_corpus(&spec(PathBuf::from("/no/such/file"), Encoding::Utf8)).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn manifest_three_and_four_field_lines() {
        let dir = tempfile::tempdir().unwrap();
        let m = write_bytes(
            dir.path(),
            "manifest.tsv",
            b"wp\tnatural\twindows1251\ttexts/wp.txt\n\nsrc\tjava\tcode/Main.java\n",
        );
        let specs = parse_manifest(&m).unwrap();
        assert_eq!(specs.len(), 2);
        assert_eq!(specs[0].label, "wp");
        assert_eq!(specs[0].mode, Mode::Natural);
        assert_eq!(specs[0].encoding, Encoding::Windows1251);
        assert_eq!(specs[0].path, dir.path().join("texts/wp.txt"));
        assert_eq!(specs[1].encoding, Encoding::Utf8);
        assert_eq!(specs[1].mode, Mode::Java);
        assert_eq!(specs[1].path, dir.path().join("code/Main.java"));
    }

    #[test]
    fn manifest_absolute_path_kept() {
        let dir = tempfile::tempdir().unwrap();
        let m = write_bytes(dir.path(), "m.tsv", b"a\tcpp\t/abs/file.cc\n");
        let specs = parse_manifest(&m).unwrap();
        assert_eq!(specs[0].path, PathBuf::from("/abs/file.cc"));
    }

    #[test]
    fn manifest_rejects_bad_lines() {
        let dir = tempfile::tempdir().unwrap();
        let cases: [&[u8]; 5] = [
            b"onlytwo\tnatural\n",
            b"x\tklingon\tf.txt\n",
            b"x\tnatural\tebcdic\tf.txt\n",
            b"\tnatural\tf.txt\n",
            b"x\tnatural\ta.txt\nx\tjava\tb.txt\n",
        ];
        for (i, case) in cases.iter().enumerate() {
            let m = write_bytes(dir.path(), &format!("m{i}.tsv"), case);
            let err = parse_manifest(&m).unwrap_err();
            assert!(matches!(err, Error::Manifest { .. }), "case {i}: {err:?}");
            assert_eq!(err.exit_code(), 1);
        }
    }

    #[test]
    fn manifest_reports_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let m = write_bytes(dir.path(), "m.tsv", b"ok\tnatural\tf.txt\n\nbroken line\n");
        match parse_manifest(&m).unwrap_err() {
            Error::Manifest { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_manifest_is_empty_run() {
        let dir = tempfile::tempdir().unwrap();
        let m = write_bytes(dir.path(), "m.tsv", b"\n\n");
        assert!(parse_manifest(&m).unwrap().is_empty());
    }

    #[test]
    fn encoding_names_round_trip() {
        for enc in [Encoding::Utf8, Encoding::Windows1251, Encoding::Koi8R] {
            assert_eq!(Encoding::parse(enc.name()), Some(enc));
        }
        assert_eq!(Encoding::parse("latin1"), None);
    }
}

//! Byte-exact parsing and serialization of `application/x-www-form-urlencoded`
//! bodies, plus the origin and query handling used by every matching check.
//!
//! Every byte that crosses the simulated wire goes through this module. The
//! parser is total and lenient: malformed percent escapes are preserved
//! verbatim in the decoded text, and the undecoded bytes of each part are
//! kept so that untouched parts survive rewriting byte-for-byte.

use std::fmt;

use serde::{Deserialize, Serialize};
use url::Url;

/// The only body content type the replacement engine understands. Anything
/// else is opaque and travels unmodified.
pub const FORM_URLENCODED: &str = "application/x-www-form-urlencoded";

/// One `name=value` segment of a form body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawPart {
    /// The undecoded segment exactly as it appeared between `&` separators.
    pub raw: Vec<u8>,
    /// Percent-decoded, plus-as-space form of the half before the first `=`.
    pub name: String,
    /// Decoded form of the half after the first `=`; empty when no `=` exists.
    pub value: String,
}

/// An ordered sequence of [`RawPart`]s. Re-joining the raw bytes of all parts
/// with `&` reproduces the original body byte-for-byte.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormBody {
    parts: Vec<RawPart>,
}

impl FormBody {
    pub fn parts(&self) -> &[RawPart] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Joins the raw bytes of all parts with `&`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                out.push(b'&');
            }
            out.extend_from_slice(&part.raw);
        }
        out
    }

    /// First part whose decoded name equals `name`, mirroring HTML form
    /// lookup semantics.
    pub fn first_named(&self, name: &str) -> Option<&RawPart> {
        self.parts.iter().find(|p| p.name == name)
    }

    pub(crate) fn from_parts(parts: Vec<RawPart>) -> Self {
        Self { parts }
    }
}

/// Splits `bytes` on `&`, then each part on its first `=` (parts without `=`
/// get an empty value). `+` decodes as space, then percent escapes decode;
/// malformed escapes are preserved verbatim. Parsing is total: malformedness
/// is preserved, never rejected.
pub fn parse_form_body(bytes: &[u8]) -> FormBody {
    if bytes.is_empty() {
        return FormBody::default();
    }
    let parts = bytes
        .split(|&b| b == b'&')
        .map(|raw| {
            let (raw_name, raw_value) = match raw.iter().position(|&b| b == b'=') {
                Some(i) => (&raw[..i], &raw[i + 1..]),
                None => (raw, &raw[raw.len()..]),
            };
            RawPart {
                raw: raw.to_vec(),
                name: lenient_decode(raw_name),
                value: lenient_decode(raw_value),
            }
        })
        .collect();
    FormBody::from_parts(parts)
}

/// Plus-as-space plus lenient percent decoding. Invalid escape sequences
/// pass through untouched so that decode(raw) of an untouched part can be
/// re-derived from the raw bytes at any time.
pub fn lenient_decode(bytes: &[u8]) -> String {
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'+' => {
                out.push(b' ');
                i += 1;
            }
            b'%' if i + 2 < bytes.len() => {
                let hi = hex_val(bytes[i + 1]);
                let lo = hex_val(bytes[i + 2]);
                match (hi, lo) {
                    (Some(h), Some(l)) => {
                        out.push(h << 4 | l);
                        i += 3;
                    }
                    _ => {
                        out.push(b'%');
                        i += 1;
                    }
                }
            }
            b => {
                out.push(b);
                i += 1;
            }
        }
    }
    String::from_utf8_lossy(&out).into_owned()
}

fn hex_val(b: u8) -> Option<u8> {
    match b {
        b'0'..=b'9' => Some(b - b'0'),
        b'a'..=b'f' => Some(b - b'a' + 10),
        b'A'..=b'F' => Some(b - b'A' + 10),
        _ => None,
    }
}

/// Bytes left untouched by `encodeURIComponent`: alphanumerics plus
/// `- _ . ! ~ * ' ( )`.
fn is_component_unreserved(b: u8) -> bool {
    b.is_ascii_alphanumeric()
        || matches!(b, b'-' | b'_' | b'.' | b'!' | b'~' | b'*' | b'\'' | b'(' | b')')
}

/// Percent-encodes every byte outside the unreserved set. Space becomes
/// `%20`, never `+`.
pub fn percent_encode_component(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for &b in text.as_bytes() {
        if is_component_unreserved(b) {
            out.push(b as char);
        } else {
            out.push_str(&format!("%{b:02X}"));
        }
    }
    out
}

/// Canonical serialization of one form pair: both halves component-encoded,
/// joined with `=`.
pub fn encode_form_pair(name: &str, value: &str) -> String {
    format!("{}={}", percent_encode_component(name), percent_encode_component(value))
}

/// The (scheme, host, port) triple that governs whether a nonce may be
/// replaced for a given destination. Missing ports normalize to 443 for
/// https and 80 for http; host comparison is case-insensitive.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Origin {
    pub scheme: String,
    pub host: String,
    pub port: u16,
}

impl Origin {
    pub fn new(scheme: &str, host: &str, port: u16) -> Self {
        Self {
            scheme: scheme.to_ascii_lowercase(),
            host: host.to_ascii_lowercase(),
            port,
        }
    }

    pub fn https(host: &str) -> Self {
        Self::new("https", host, 443)
    }

    pub fn http(host: &str) -> Self {
        Self::new("http", host, 80)
    }

    /// Extracts the origin triple from an absolute URL. `None` when the URL
    /// does not parse, has no host, or has no port and no known default.
    pub fn parse(url: &str) -> Option<Self> {
        let u = Url::parse(url).ok()?;
        let host = u.host_str()?;
        let port = u.port_or_known_default()?;
        Some(Self::new(u.scheme(), host, port))
    }
}

impl PartialEq for Origin {
    fn eq(&self, other: &Self) -> bool {
        self.scheme.eq_ignore_ascii_case(&other.scheme)
            && self.host.eq_ignore_ascii_case(&other.host)
            && self.port == other.port
    }
}

impl Eq for Origin {}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}://{}:{}", self.scheme, self.host, self.port)
    }
}

/// True iff the URL's scheme/host/normalized-port triple equals `origin`.
/// Any parse failure yields false (fail-safe: an unmatchable URL never
/// authorizes a replacement).
pub fn origin_matches(url: &str, origin: &Origin) -> bool {
    Origin::parse(url).is_some_and(|o| o == *origin)
}

/// True iff the decoded query-string component of `url` contains `needle`
/// as a substring. Decoding follows the same lenient rules as
/// [`parse_form_body`]. Unparsable URLs and URLs without a query yield false.
pub fn url_query_contains(url: &str, needle: &str) -> bool {
    let Ok(u) = Url::parse(url) else {
        return false;
    };
    u.query()
        .map(|q| lenient_decode(q.as_bytes()).contains(needle))
        .unwrap_or(false)
}

/// URL equality that ignores only the fragment. Parse failure on either
/// side yields false.
pub fn urls_equal_ignoring_fragment(a: &str, b: &str) -> bool {
    match (Url::parse(a), Url::parse(b)) {
        (Ok(mut ua), Ok(mut ub)) => {
            ua.set_fragment(None);
            ub.set_fragment(None);
            ua == ub
        }
        _ => false,
    }
}

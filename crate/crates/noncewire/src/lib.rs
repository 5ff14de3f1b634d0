//! Desk-scale model of a secure password-entry channel.
//!
//! The idea under test: instead of autofilling the real password, a password
//! manager autofills a random nonce, and the credential is swapped in at a
//! point attackers cannot observe. Three designs place that swap at
//! different trust boundaries:
//!
//! - **Design #3 (JS injection)** — a manager script guards the form's
//!   submit machinery and replaces the nonce inside the DOM.
//! - **Design #4 (API injection)** — the browser replaces the nonce in its
//!   internal form data at the first request-lifecycle stage.
//! - **Design #5 (browser injection)** — the network layer replaces the
//!   nonce after every stage where extensions can still read the body.
//!
//! The crate is organized around that flow:
//!
//! - [`codec`] — byte-exact form-urlencoded parsing/serialization and
//!   origin/query matching; every wire byte goes through here.
//! - [`vault`] — the manager side: credential entries, nonce generation,
//!   autofill registration, and the two lifecycle callbacks with the five
//!   manager-side safety checks.
//! - [`webmodel`] — a DOM-lite login page: forms, fields, frame context,
//!   and an ordered script-hook system.
//! - [`pipeline`] — the request lifecycle state machine with per-stage
//!   extension visibility, the substitution points, and the stream
//!   replacement engine with its three browser-side checks.
//! - [`attacks`] — executable adversaries (DOM scrapers, a body-logging
//!   extension, the reflection attacker) producing attributed capture sets.
//! - [`harness`] — synthetic site corpus, the security/functional/overhead
//!   evaluations, result classification, and report emission.
//!
//! Each major capability has a runnable example under `examples/`; the CLI
//! in `src/main.rs` is a thin wrapper over [`harness`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub mod attacks;
pub mod codec;
pub mod harness;
pub mod pipeline;
pub mod vault;
pub mod webmodel;

/// Which of the three nonce-injection designs drives a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Design {
    /// A manager-injected script replaces the nonce in the DOM at submit.
    JsInjection,
    /// The browser replaces the nonce in its internal form data at the
    /// first lifecycle stage, before the body is visible downstream.
    ApiInjection,
    /// The network layer replaces the nonce after all body-visible
    /// extension stages, fed by a body-stripped credentials callback.
    BrowserInjection,
}

impl Design {
    pub const ALL: [Design; 3] = [
        Design::JsInjection,
        Design::ApiInjection,
        Design::BrowserInjection,
    ];

    pub fn number(self) -> u8 {
        match self {
            Design::JsInjection => 3,
            Design::ApiInjection => 4,
            Design::BrowserInjection => 5,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Design::JsInjection => "JS-based nonce injection",
            Design::ApiInjection => "API-based nonce injection",
            Design::BrowserInjection => "Browser-based nonce injection",
        }
    }
}

impl From<Design> for u8 {
    fn from(d: Design) -> u8 {
        d.number()
    }
}

impl TryFrom<u8> for Design {
    type Error = String;

    fn try_from(n: u8) -> Result<Self, Self::Error> {
        match n {
            3 => Ok(Design::JsInjection),
            4 => Ok(Design::ApiInjection),
            5 => Ok(Design::BrowserInjection),
            other => Err(format!("unknown design #{other}; expected 3, 4, or 5")),
        }
    }
}

impl FromStr for Design {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n: u8 = s
            .trim()
            .parse()
            .map_err(|_| format!("`{s}` is not a design number"))?;
        Design::try_from(n)
    }
}

impl fmt::Display for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.number())
    }
}

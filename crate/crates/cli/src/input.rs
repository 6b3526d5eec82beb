//! The JSON input document.

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use sis_lne::sis::SisInput;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Fd {
    Expr(String),
    Factored { factors: Vec<String> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum Emit {
    #[serde(rename = "verdict")]
    Verdict,
    T,
    G0,
    #[serde(rename = "all")]
    All,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Options {
    pub shear_seed_override: Option<usize>,
    pub precision: Option<usize>,
    pub emit: Option<Vec<Emit>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub fd: Fd,
    pub fd1: String,
    #[serde(default)]
    pub options: Options,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: InputDocument = serde_json::from_str(text).context("malformed input document")?;
        if let Fd::Factored { factors } = &doc.fd {
            if factors.is_empty() {
                bail!("factor list is empty");
            }
        }
        Ok(doc)
    }

    pub fn to_input(&self) -> Result<SisInput> {
        let mut input = match &self.fd {
            Fd::Expr(s) => SisInput::parse(s, &self.fd1)?,
            Fd::Factored { factors } => {
                let fs: Vec<&str> = factors.iter().map(String::as_str).collect();
                SisInput::parse_factored(&fs, &self.fd1)?
            }
        };
        if let Some(offset) = self.options.shear_seed_override {
            input.shear_offset = offset;
        }
        Ok(input)
    }

    pub fn wants(&self, e: Emit) -> bool {
        self.options
            .emit
            .as_ref()
            .is_some_and(|list| list.iter().any(|&x| x == e || x == Emit::All))
    }
}

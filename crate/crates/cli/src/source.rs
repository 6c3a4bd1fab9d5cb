//! Source-data acquisition: local fixture files and block-explorer-style
//! HTTP endpoints, with recorded-response replay for hermetic tests.

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use percent_encoding::{percent_encode, NON_ALPHANUMERIC};

use blondie_core::{bitcoin, ethereum, fabric};

/// Environment variable selecting replay mode for [`fetch_block`]. When set,
/// responses are served from `<dir>/<percent-encoded request path>` and the
/// network is never touched.
pub const REPLAY_DIR_ENV: &str = "BLONDIE_REPLAY_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chain {
    Bitcoin,
    Ethereum,
    Fabric,
}

impl Chain {
    pub fn name(self) -> &'static str {
        match self {
            Chain::Bitcoin => "bitcoin",
            Chain::Ethereum => "ethereum",
            Chain::Fabric => "fabric",
        }
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Decoded records from one source file or fetch, with decode warnings.
#[derive(Debug)]
pub enum ChainRecords {
    Bitcoin(Vec<bitcoin::Block>),
    Ethereum(Vec<ethereum::EthereumBlock>),
    Fabric(Vec<fabric::FabricBlock>),
}

impl ChainRecords {
    pub fn len(&self) -> usize {
        match self {
            ChainRecords::Bitcoin(v) => v.len(),
            ChainRecords::Ethereum(v) => v.len(),
            ChainRecords::Fabric(v) => v.len(),
        }
    }
}

/// Records plus provenance and decode warnings.
#[derive(Debug)]
pub struct LoadedSource {
    pub records: ChainRecords,
    /// Path or URL the records came from.
    pub origin: String,
    pub warnings: Vec<String>,
}

/// Read and decode a fixture file for the given chain. Bitcoin files hold
/// one raw block (binary or hex text, auto-detected) and need a height;
/// Ethereum and Fabric files hold a JSON object or array.
pub fn load_fixture(path: &Path, chain: Chain, height: Option<u64>) -> Result<LoadedSource> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let origin = path.display().to_string();
    decode_payload(&bytes, chain, height).with_context(|| format!("{origin}: cannot decode as {chain}"))
        .map(|(records, warnings)| LoadedSource { records, origin, warnings })
}

/// Decode an in-memory payload (shared by file and fetch paths).
pub fn decode_payload(bytes: &[u8], chain: Chain, height: Option<u64>) -> Result<(ChainRecords, Vec<String>)> {
    match chain {
        Chain::Bitcoin => {
            let height = height.ok_or_else(|| anyhow!("--height is required for bitcoin input (block height is not part of the wire format)"))?;
            let raw = match hex_payload(bytes) {
                Some(hex_text) => hex::decode(hex_text).context("invalid hex block encoding")?,
                None => bytes.to_vec(),
            };
            let decoded = bitcoin::decode_block(&raw, height)?;
            Ok((ChainRecords::Bitcoin(vec![decoded.block]), decoded.warnings))
        }
        Chain::Ethereum => {
            let text = std::str::from_utf8(bytes).context("expected UTF-8 JSON")?;
            let blocks = ethereum::parse_eth_blocks(text)?;
            Ok((ChainRecords::Ethereum(blocks), Vec::new()))
        }
        Chain::Fabric => {
            let text = std::str::from_utf8(bytes).context("expected UTF-8 JSON")?;
            let blocks = fabric::parse_fabric_blocks(text)?;
            Ok((ChainRecords::Fabric(blocks), Vec::new()))
        }
    }
}

/// Treat the payload as hex text when every byte is a hex digit or
/// whitespace (and there is at least one digit).
fn hex_payload(bytes: &[u8]) -> Option<String> {
    let mut digits = String::new();
    for &b in bytes {
        if b.is_ascii_hexdigit() {
            digits.push(b as char);
        } else if !b.is_ascii_whitespace() {
            return None;
        }
    }
    if digits.is_empty() {
        None
    } else {
        Some(digits)
    }
}

/// Request-path templates per chain; `{hash}` and `{number}` substitute the
/// block reference.
#[derive(Debug, Clone)]
pub struct EndpointConfig {
    pub bitcoin_path: String,
    pub ethereum_path: String,
    pub fabric_path: String,
}

impl Default for EndpointConfig {
    fn default() -> Self {
        EndpointConfig {
            bitcoin_path: "/block/{hash}/raw".to_string(),
            ethereum_path: "/eth/block/{number}".to_string(),
            fabric_path: "/fab/block/{number}".to_string(),
        }
    }
}

impl EndpointConfig {
    pub fn request_path(&self, chain: Chain, block_ref: &str) -> String {
        let template = match chain {
            Chain::Bitcoin => &self.bitcoin_path,
            Chain::Ethereum => &self.ethereum_path,
            Chain::Fabric => &self.fabric_path,
        };
        template.replace("{hash}", block_ref).replace("{number}", block_ref)
    }
}

/// Fetch a raw block payload. With [`REPLAY_DIR_ENV`] set, the recorded
/// response for the request path is returned byte-exact and a miss is an
/// error; otherwise the configured endpoint is queried over HTTP.
pub fn fetch_block(endpoint_base: &str, chain: Chain, block_ref: &str, config: &EndpointConfig) -> Result<Vec<u8>> {
    let path = config.request_path(chain, block_ref);
    if let Ok(dir) = std::env::var(REPLAY_DIR_ENV) {
        let file = Path::new(&dir).join(percent_encode(path.as_bytes(), NON_ALPHANUMERIC).to_string());
        return fs::read(&file).with_context(|| format!("replay miss: no recording for {path} (looked at {})", file.display()));
    }
    let url = format!("{}{}", endpoint_base.trim_end_matches('/'), path);
    let response = ureq::get(&url).call().with_context(|| format!("GET {url} failed"))?;
    if response.status() != 200 {
        bail!("GET {url}: HTTP {}", response.status());
    }
    let mut body = Vec::new();
    response.into_reader().read_to_end(&mut body).with_context(|| format!("reading body of {url}"))?;
    Ok(body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_detection() {
        assert_eq!(hex_payload(b"00ff aa\n"), Some("00ffaa".to_string()));
        assert_eq!(hex_payload(b"zz"), None);
        assert_eq!(hex_payload(&[0x01, 0x02]), None);
        assert_eq!(hex_payload(b"  \n"), None);
    }

    #[test]
    fn request_paths_substitute_refs() {
        let config = EndpointConfig::default();
        assert_eq!(config.request_path(Chain::Bitcoin, "00ff"), "/block/00ff/raw");
        assert_eq!(config.request_path(Chain::Ethereum, "7"), "/eth/block/7");
        assert_eq!(config.request_path(Chain::Fabric, "0"), "/fab/block/0");
    }
}

use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "canonseq", version, about = "Canonical sequent systems: coherence, decision, proofs and countermodels")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Parse and validate a system file.
    Check { system: PathBuf },
    /// Check the coherence criterion for every left/right rule pair.
    Coherence {
        system: PathBuf,
        /// For incoherent systems, print a derivation of `=>` from `=> p1` and `p2 =>`.
        #[arg(long)]
        witness: bool,
    },
    /// Decide a sequent from assumptions.
    Decide {
        system: PathBuf,
        goal: String,
        /// File with one assumption sequent per line.
        #[arg(long)]
        assume: Option<PathBuf>,
        /// Write the proof as JSON.
        #[arg(long)]
        proof: Option<PathBuf>,
        /// Build the canonical countermodel and write it as JSON.
        #[arg(long)]
        countermodel: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        max_closure_size: usize,
    },
    /// Search for a legal frame refuting a sequent.
    Countermodel {
        system: PathBuf,
        goal: String,
        #[arg(long)]
        assume: Option<PathBuf>,
        /// Defaults to 2^|U| capped at 16.
        #[arg(long)]
        max_worlds: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a proof JSON file.
    CheckProof {
        system: PathBuf,
        proof: PathBuf,
        #[arg(long)]
        assume: Option<PathBuf>,
        /// Also require every cut formula to occur in the assumptions.
        #[arg(long)]
        s_proof: bool,
        /// Also require every sequent in the proof to be definite.
        #[arg(long)]
        strict: bool,
    },
    /// Check a frame JSON file for the order axioms, persistence and legality.
    CheckFrame {
        system: PathBuf,
        frame: PathBuf,
        /// Also require the frame to model these sequents.
        #[arg(long)]
        model_of: Option<PathBuf>,
    },
    /// Run a manifest of jobs and compare verdicts.
    Batch {
        manifest: PathBuf,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Coherence { .. } => "coherence",
            Command::Decide { .. } => "decide",
            Command::Countermodel { .. } => "countermodel",
            Command::CheckProof { .. } => "check-proof",
            Command::CheckFrame { .. } => "check-frame",
            Command::Batch { .. } => "batch",
        }
    }

    /// Files the command reads.
    pub fn inputs(&self) -> Vec<&PathBuf> {
        match self {
            Command::Check { system } | Command::Coherence { system, .. } => vec![system],
            Command::Decide { system, assume, .. } | Command::Countermodel { system, assume, .. } => {
                std::iter::once(system).chain(assume).collect()
            }
            Command::CheckProof {
                system, proof, assume, ..
            } => [system, proof].into_iter().chain(assume).collect(),
            Command::CheckFrame {
                system, frame, model_of, ..
            } => [system, frame].into_iter().chain(model_of).collect(),
            Command::Batch { manifest, .. } => vec![manifest],
        }
    }
}

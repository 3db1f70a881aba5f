//! Library side of the `delga` command-line tool: text formats and the
//! command implementations, exposed so integration tests can drive the
//! commands without spawning processes.

pub mod commands;
pub mod format;

#ifndef RCALC_SESSION_HPP
#define RCALC_SESSION_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "rcalc/engine.hpp"
#include "rcalc/specfile.hpp"

namespace rcalc {

// Interactive development loop over one specification. Pure function of its
// command stream: transcripts are reproducible byte for byte.
class Session {
 public:
  Session();
  explicit Session(SpecFile spec);

  // One command line; output appended to `out`. Returns false on `quit`.
  bool execute(const std::string& line, std::ostream& out);

  const SpecFile& spec() const { return spec_; }
  const std::vector<DerivationTrace>& history() const { return history_; }

 private:
  struct Snapshot {
    SpecFile spec;
    std::vector<Termination> revisions;
  };

  void cmd_assert(const std::string& arg, std::ostream& out);
  void cmd_show(std::ostream& out);
  void cmd_consequences(std::ostream& out);
  void cmd_reject(const std::string& arg, std::ostream& out);
  void cmd_revisions(std::ostream& out);
  void cmd_choose(const std::string& arg, std::ostream& out);
  void cmd_why(const std::string& arg, std::ostream& out);
  void cmd_undo(std::ostream& out);
  void cmd_save(const std::string& arg, std::ostream& out);
  void push_undo();
  std::string fresh_name(const std::string& prefix) const;

  SpecFile spec_;
  std::vector<Termination> revisions_;  // last `revisions` listing
  std::vector<Snapshot> undo_;
  std::vector<DerivationTrace> history_;
};

// Drives a session from an input stream; prompts and commands are echoed so
// piped transcripts are self-contained.
int run_repl(std::istream& in, std::ostream& out, const std::string& specfile_path);

}  // namespace rcalc

#endif

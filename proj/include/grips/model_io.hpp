#pragma once

#include <memory>
#include <string>

#include "grips/group_model.hpp"

namespace grips {

/**
 * Line-oriented model description files.  Each line is "key = value"; '#'
 * starts a comment, blank lines are ignored.  Keys:
 *
 *   name       display name (optional; defaults to the file stem)
 *   kind       free | cyclic | table | free-product | direct-product |
 *              small-cancellation
 *   letters    generator letters (free, table, small-cancellation)
 *   order      group order (cyclic)
 *   letter     generator letter (cyclic)
 *   relator    one relator word (small-cancellation; repeatable)
 *   row        right-multiplication images for one generator, identity
 *              first (table; one row per letter, in letter order)
 *   factor     inline factor spec for product kinds (repeatable):
 *              "free <letters>" or "cyclic <order> <letter>"
 *   peripheral "factor <index>" or "generated <letter> [<letter> ...]"
 *              (repeatable; attached after the model is built)
 */
struct ModelFile {
  std::string name;
  std::unique_ptr<GroupModel> model;
};

ModelFile parse_model_text(const std::string& text, const std::string& origin);
ModelFile load_model_file(const std::string& path);

// Attaches one peripheral described by the model-file syntax ("factor 0",
// "generated a b") to an existing model.
void attach_peripheral(GroupModel& m, const std::string& value);

// Key/value description of a built model (kind, alphabet, order,
// peripherals), one line per key, for manifests and the model subcommand.
std::string describe_model(const GroupModel& m);

}  // namespace grips

#pragma once

#include <iosfwd>
#include <string>

#include "qldpc/code.hpp"
#include "qldpc/gf2.hpp"

namespace qldpc {

// MacKay alist format. First line "n m" (columns then rows); indices inside
// are 1-based; writers pad each adjacency line with zeros up to the maximum
// degree and readers accept both padded and unpadded lines.
BitMat read_alist(std::istream& in);
BitMat read_alist_file(const std::string& path);
void write_alist(std::ostream& out, const BitMat& h);
void write_alist_file(const std::string& path, const BitMat& h);

// CSS text format:
//   line 1:            n m_x m_z
//   next m_x lines:    0-based sorted column indices of one H_X row
//   next m_z lines:    same for H_Z
// Blank entry lines encode empty rows; lines starting with '#' are skipped.
CssCode read_css(std::istream& in, std::string name = "");
CssCode read_css_file(const std::string& path);
void write_css(std::ostream& out, const CssCode& code);
void write_css_file(const std::string& path, const CssCode& code);

// Loads a .css file by path, or a bundled code by bare name (resolved under
// data_dir()/codes). The code name is the file stem.
CssCode load_code(const std::string& path_or_name);

// QLDPC_DATA_DIR when set, otherwise the source-tree data directory baked in
// at compile time.
std::string data_dir();

}  // namespace qldpc

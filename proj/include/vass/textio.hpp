#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "vass/model.hpp"
#include "vass/monoid.hpp"

namespace vass {

/// Parse failure with 1-based line and column information.
class ParseError : public std::runtime_error {
public:
    ParseError(size_t line, size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + what),
          line(line), column(column) {}
    size_t line;
    size_t column;
};

/// Line-oriented model format; `#` starts a comment. States may be listed
/// explicitly with a `states` line, otherwise they are declared by first
/// mention.
Vass parse_model(const std::string& text);
Vass parse_model_file(const std::string& path);

std::string print_model(const Vass& v);

/// `monoid SIZE IDENTITY`, SIZE table rows, then `hom LETTER INDEX` lines.
struct MonoidFile {
    FiniteMonoid monoid;
    std::map<std::string, int> hom;
};
MonoidFile parse_monoid(const std::string& text);
MonoidFile parse_monoid_file(const std::string& path);

/// Binds a parsed monoid file's letter map to the VASS alphabet.
Hom bind_hom(const MonoidFile& mf, const std::vector<std::string>& alphabet);

/// Space-separated symbol names; the empty string is the empty word.
Word parse_word(const Vass& v, const std::string& text);
std::string word_to_string(const Vass& v, const Word& w);

} // namespace vass

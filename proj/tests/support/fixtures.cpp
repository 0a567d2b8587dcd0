#include "fixtures.hpp"

namespace fixtures {

std::string corpus_dir() { return RELHH_CORPUS_DIR; }

}  // namespace fixtures

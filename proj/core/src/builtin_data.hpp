#pragma once

// Raw JSON documents compiled into the library at build time.  The sources of
// truth live in core/data/ and are embedded verbatim so the installed library
// has no runtime file dependencies.
namespace lpwan::data {

const char* region_profiles_json();
const char* literature_studies_json();

}  // namespace lpwan::data

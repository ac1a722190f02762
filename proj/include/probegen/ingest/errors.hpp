#pragma once

#include "probegen/common/error.hpp"

namespace probegen::ingest {

class IngestError : public Error {
public:
    using Error::Error;
};

}  // namespace probegen::ingest

// Copyright 2026 The hmstream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HMSTREAM_ERRORS_HPP
#define HMSTREAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hmstream {

enum class ErrorCode {
    Domain,
    Index,
    Capacity,
    Decomposition,
    Protocol,
    Transport,
    Io,
    Internal,
};

/// Base of every exception thrown by the core. The C API maps `code()` onto
/// an `hm_status` value.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

struct DomainError : Error {
    explicit DomainError(const std::string &w) : Error(ErrorCode::Domain, w) {}
};
struct IndexError : Error {
    explicit IndexError(const std::string &w) : Error(ErrorCode::Index, w) {}
};
struct CapacityError : Error {
    explicit CapacityError(const std::string &w) : Error(ErrorCode::Capacity, w) {}
};
struct DecompositionError : Error {
    explicit DecompositionError(const std::string &w) : Error(ErrorCode::Decomposition, w) {}
};
struct ProtocolError : Error {
    explicit ProtocolError(const std::string &w) : Error(ErrorCode::Protocol, w) {}
};
struct TransportError : Error {
    explicit TransportError(const std::string &w) : Error(ErrorCode::Transport, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string &w) : Error(ErrorCode::Io, w) {}
};
struct InternalError : Error {
    explicit InternalError(const std::string &w) : Error(ErrorCode::Internal, w) {}
};

}  // namespace hmstream

#endif

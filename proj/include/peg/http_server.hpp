// Copyright 2026 The PEG Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PEG_HTTP_SERVER_HPP_
#define PEG_HTTP_SERVER_HPP_

#include <string>

#include "httplib.h"
#include "peg/service.hpp"

namespace peg {

// Installs the JSON API and CORS headers on `server`.
void register_routes(httplib::Server& server, SessionService& service);

}  // namespace peg

#endif  // PEG_HTTP_SERVER_HPP_

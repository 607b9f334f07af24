/*
 * Copyright 2026 The sliceopt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SLICEOPT_ERRORS_HPP
#define SLICEOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sliceopt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A model, decision or policy object violates its structural invariants.
class InvalidModel : public Error
{
public:
    using Error::Error;
};

/// A cost term would divide by a zero provisioning coefficient.
class DegenerateAllocation : public Error
{
public:
    using Error::Error;
};

/// The M/M/1 service rate does not exceed the arrival rate.
class UnstableQueue : public Error
{
public:
    using Error::Error;
};

/// A task is routed to a node that has no capacity in the chosen slice.
class InfeasibleSliceNode : public Error
{
public:
    using Error::Error;
};

class EmptyOffloaderSet : public Error
{
public:
    using Error::Error;
};

class NonPositiveCost : public Error
{
public:
    using Error::Error;
};

class DimensionTooLarge : public Error
{
public:
    using Error::Error;
};

class SearchSpaceTooLarge : public Error
{
public:
    using Error::Error;
};

/// Scenario configuration is malformed or out of range.
class ConfigInvalid : public Error
{
public:
    using Error::Error;
};

class TooFewSamples : public Error
{
public:
    using Error::Error;
};

} // namespace sliceopt

#endif // SLICEOPT_ERRORS_HPP

# Copyright 2026 The tamco Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""SOC test wrapper design and TAM scheduling."""

from tamco._core import (  # noqa: F401
    CoreSpec,
    InstanceTooLarge,
    SocSpec,
    TestSchedule,
    WrapperPlan,
    __version__,
    compute_test_time,
    design_wrapper,
    emit_canonical,
    exact_schedule,
    gap_report,
    parse_soc,
    random_soc,
    rectangle_heights,
    schedule_tests,
    validate,
    wrapper_table,
)


def load_soc(path):
    """Parse a canonical or ITC'02 SOC file."""
    with open(path, encoding="utf-8") as f:
        return parse_soc(f.read())

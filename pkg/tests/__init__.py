# SPDX-FileCopyrightText: 2023-present maromei <void@some.where>
#
# SPDX-License-Identifier: MIT

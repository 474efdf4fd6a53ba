// SPDX-License-Identifier: Apache-2.0

#include "refactordb/cli.hpp"
#include "refactordb/ddl_parser.hpp"
#include "refactordb/versioning.hpp"

namespace refactordb {

namespace {

constexpr std::string_view kCorpus = R"(
CREATE TABLE DEPT (
  DEPTNO NUMBER(2,0),
  DNAME VARCHAR2(14),
  LOC VARCHAR2(13),
  CONSTRAINT PK_DEPT PRIMARY KEY (DEPTNO)
);
CREATE TABLE EMP (
  EMPNO NUMBER(4,0),
  ENAME VARCHAR2(26),
  JOB VARCHAR2(9),
  MGR NUMBER(4,0),
  CONSTRAINT PK_EMP PRIMARY KEY (EMPNO)
);
CREATE TABLE PKTEMP (
  PKID NUMBER(4,0),
  DESCR VARCHAR2(20),
  CONSTRAINT PK_PKTEMP PRIMARY KEY (PKID)
);
CREATE TABLE FKTEMP (
  FKID NUMBER(4,0),
  PKID NUMBER(4,0),
  CONSTRAINT PK_FKTEMP PRIMARY KEY (FKID),
  CONSTRAINT FK_FKTEMP_PKTEMP FOREIGN KEY (PKID) REFERENCES PKTEMP (PKID)
);
CREATE TABLE COLTEMP (
  CODE NUMBER(5,0),
  LABEL VARCHAR2(40),
  CREATED DATE
);
CREATE TABLE PK2TEMP (
  NUMB NUMBER, VALUE NUMBER,
  CONSTRAINT PK_NUMBVALUE PRIMARY KEY (NUMB,VALUE),
  CONSTRAINT UQ_NUMB UNIQUE (NUMB)
);
CREATE TABLE UQTEMP (
  EMAIL VARCHAR2(60),
  PHONE VARCHAR2(15),
  CONSTRAINT UQ_EMAIL UNIQUE (EMAIL),
  CONSTRAINT UQ_PHONE UNIQUE (PHONE)
);
CREATE TABLE FK3TEMP (
  SRNO NUMBER NOT NULL,
  CONSTRAINT UQ_SRNO UNIQUE (SRNO)
);
CREATE TABLE FK2TEMP (
  NUMB2 NUMBER, VALUE2 NUMBER, SRNO NUMBER,
  CONSTRAINT FK_NUMB2VAL2_PK2TEMP_NUMBVL2 FOREIGN KEY (NUMB2, VALUE2) REFERENCES PK2TEMP (NUMB, VALUE),
  CONSTRAINT FK2TEMP_FK03 FOREIGN KEY (SRNO) REFERENCES FK3TEMP (SRNO)
);
CREATE TABLE TESTNULL (
  NOTNULLVAL NUMBER(3,0) NOT NULL,
  ACCEPTNULLVAL NUMBER(3,0),
  DEFVAL NUMBER(3,0) DEFAULT 49 NOT NULL,
  UNIQUVAL NUMBER(3,0) NOT NULL,
  PKVAL NUMBER(3,0) NOT NULL,
  CHECKVAL NUMBER(3,0) NOT NULL,
  CONSTRAINT CHECKVAL_CH CHECK (checkval > 10),
  PRIMARY KEY (PKVAL),
  CONSTRAINT UNIQUVAL_UQ UNIQUE (UNIQUVAL)
);
)";

constexpr std::string_view kSuppliers = R"(
CREATE TABLE SUPPLIERS (
  SUP_ID NUMBER(3,0),
  SUP_NAME VARCHAR2(32),
  STREET VARCHAR2(32),
  CITY VARCHAR2(32),
  STATE VARCHAR2(3),
  CONSTRAINT SUPP_PK PRIMARY KEY (SUP_ID)
);
)";

struct Rows {
    std::string_view table;
    std::vector<std::vector<std::string>> rows;
};

const std::vector<Rows>& fixture_rows()
{
    static const std::vector<Rows> rows = {
        {"DEPT",
         {{"10", "'ACCOUNTING'", "'NEW YORK'"},
          {"20", "'RESEARCH'", "'DALLAS'"},
          {"30", "'SALES'", "'CHICAGO'"},
          {"40", "'OPERATIONS'", "'BOSTON'"}}},
        {"EMP",
         {{"7369", "'SMITH'", "'CLERK'", "7902"},
          {"7499", "'ALLEN'", "'SALESMAN'", "7698"},
          {"7521", "'WARD'", "'SALESMAN'", "7698"},
          {"7566", "'JONES'", "'MANAGER'", "7839"},
          {"7654", "'MARTIN'", "'SALESMAN'", "7698"},
          {"7698", "'BLAKE'", "'MANAGER'", "7839"},
          {"7782", "'CLARK'", "'MANAGER'", "7839"},
          {"7839", "'KING'", "'PRESIDENT'", "NULL"},
          {"7844", "'TURNER'", "'SALESMAN'", "7698"}}},
        {"PKTEMP", {{"1", "'first'"}, {"2", "'second'"}}},
        {"FKTEMP", {{"100", "1"}, {"101", "2"}, {"102", "NULL"}}},
        {"COLTEMP", {{"1", "'alpha'", "DATE '2009-01-01'"}, {"2", "NULL", "NULL"}}},
        {"PK2TEMP", {{"1", "1"}, {"2", "2"}, {"3", "5"}}},
        {"UQTEMP", {{"'a@example.org'", "'555-0100'"}, {"'b@example.org'", "NULL"}}},
        {"FK3TEMP", {{"1"}, {"2"}}},
        {"FK2TEMP", {{"1", "1", "1"}, {"2", "2", "NULL"}, {"NULL", "NULL", "2"}}},
        {"TESTNULL", {{"1", "NULL", "49", "1", "1", "11"}, {"2", "7", "49", "2", "2", "20"}, {"3", "NULL", "50", "3", "3", "30"}}},
        {"SUPPLIERS",
         {{"100", "'Acme Hardware'", "'12 Main St'", "'Springfield'", "'IL'"},
          {"101", "'Bolt Supply'", "'4 Harbor Rd'", "'Portland'", "'ME'"},
          {"102", "'Cobalt Tools'", "NULL", "'Denver'", "'CO'"},
          {"103", "'Delta Fasteners'", "'77 Elm Ave'", "'Austin'", "'TX'"},
          {"104", "'Evergreen Parts'", "'9 Pine St'", "'Seattle'", "'WA'"},
          {"105", "'Fulton Metals'", "'310 Canal St'", "'Albany'", "'NY'"}}},
    };
    return rows;
}

Schema with_owner(Schema schema, const std::string& owner)
{
    schema.owner = owner;
    for (Table& t : schema.tables)
        t.set_owner(owner);
    return schema;
}

} // namespace

Schema corpus_schema(const std::string& owner)
{
    return with_owner(parse_script(kCorpus, "corpus"), owner);
}

DataStore fixture_store(const std::string& owner)
{
    Schema schema = corpus_schema(owner);
    Table suppliers = parse_script(kSuppliers, "fixture").tables.front();
    suppliers.set_owner(owner);
    schema.tables.push_back(std::move(suppliers));
    DataStore store = make_store(std::move(schema));
    for (const Rows& r : fixture_rows()) {
        for (const auto& row : r.rows)
            insert_row(store, r.table, row);
    }
    auto backup = create_backup(store, "EMP", *parse_timestamp("2009-01-24T12:02:06"));
    backup.first.schema.table(backup.second).set_owner(owner);
    return std::move(backup.first);
}

} // namespace refactordb
